#include "forge/tag2cts.hpp"

namespace forge {

std::uint32_t padded_alphabet_size(std::uint32_t n) { return (n + 5) / 6 * 6; }

namespace {

void append_unary(Bits& out, Symbol a, std::uint32_t phi) {
    auto at = out.size();
    out.resize(at + phi, 0);
    out[at + a] = 1;
}

void append_word(Bits& out, const RleWord& w, std::uint32_t phi, std::uint64_t limit) {
    if (word_length(w) * phi + out.size() > limit) fail(ErrorKind::TooLarge, "cyclic tag word exceeds the size limit");
    for (const auto& r : w)
        for (BigInt k = 0; k < r.count; ++k) append_unary(out, r.sym, phi);
}

}  // namespace

CompiledCts compile_tag_to_cts(const TagSystem& sys, const TagTape& tape, std::uint64_t limit) {
    sys.validate();
    CompiledCts out;
    out.s = sys.s;
    out.phiSize = padded_alphabet_size(sys.size());
    auto& apps = out.sys.appendants;
    apps.resize(std::size_t(sys.s) * out.phiSize);
    for (Symbol a = 0; a < sys.size(); ++a) append_word(apps[a], sys.appendants[a], out.phiSize, limit);
    append_word(out.tape, tape.word(), out.phiSize, limit);
    return out;
}

TagTape decode_cts_tape(const Bits& tape, std::uint32_t phi) {
    if (phi == 0 || tape.size() % phi != 0) fail(ErrorKind::NotCanonical, "tape length is not a multiple of |Phi|");
    TagTape out;
    for (std::size_t at = 0; at < tape.size(); at += phi) {
        std::int64_t found = -1;
        for (std::uint32_t i = 0; i < phi; ++i) {
            if (!tape[at + i]) continue;
            if (found >= 0) fail(ErrorKind::NotCanonical, "block with more than one Y");
            found = i;
        }
        if (found < 0) fail(ErrorKind::NotCanonical, "block without a Y");
        out.push_back(static_cast<Symbol>(found), 1);
    }
    return out;
}

Bits expand_mod6(const Bits& w) {
    Bits out;
    out.reserve(w.size() * 6);
    for (auto b : w) {
        out.push_back(b);
        out.insert(out.end(), 5, 0);
    }
    return out;
}

Bits collapse_mod6(const Bits& w) {
    if (w.size() % 6 != 0) fail(ErrorKind::NotCanonical, "length not a multiple of 6");
    Bits out;
    out.reserve(w.size() / 6);
    for (std::size_t i = 0; i < w.size(); i += 6) {
        for (std::size_t k = 1; k < 6; ++k)
            if (w[i + k]) fail(ErrorKind::NotCanonical, "padding position holds a Y");
        out.push_back(w[i]);
    }
    return out;
}

NormalizedCts normalize_cts_mod6(const CyclicTagSystem& sys, const Bits& tape) {
    sys.validate();
    NormalizedCts out;
    for (const auto& a : sys.appendants) {
        out.sys.appendants.push_back(expand_mod6(a));
        out.sys.appendants.insert(out.sys.appendants.end(), 5, Bits{});
    }
    out.tape = expand_mod6(tape);
    return out;
}

}  // namespace forge
