#include "forge/tm2tag.hpp"

namespace forge {

TagSymbolId CmLayout::describe(Symbol a) const {
    using K = TagSymbolId::Kind;
    if (a < 4 * m) return {static_cast<K>(a / m), a % m, 0};
    a -= 4 * m;
    if (a < 3 * m * s) {
        auto group = a / (m * s);
        auto r = a % (m * s);
        K kind = group == 0 ? K::HPair : group == 1 ? K::LPair : K::RPair;
        return {kind, r / s, r % s};
    }
    return {K::Dummy, a - 3 * m * s, 0};
}

std::string CmLayout::name(Symbol a) const {
    auto id = describe(a);
    auto q = std::to_string(id.state + 1);
    auto pair = "(" + q + "," + std::to_string(id.symbol + 1) + ")";
    switch (id.kind) {
    case TagSymbolId::Kind::H: return "H" + q;
    case TagSymbolId::Kind::L: return "L" + q;
    case TagSymbolId::Kind::R: return "R" + q;
    case TagSymbolId::Kind::RStar: return "R*" + q;
    case TagSymbolId::Kind::HPair: return "H" + pair;
    case TagSymbolId::Kind::LPair: return "L" + pair;
    case TagSymbolId::Kind::RPair: return "R" + pair;
    case TagSymbolId::Kind::Dummy: return "phi" + std::to_string(a + 1);
    }
    return "?";
}

CompiledTag compile_tm_to_tag(const TuringMachine& tm, const TmConfiguration& cfg) {
    tm.validate();
    cfg.validate(tm);
    CmLayout lay(tm.m, tm.t);
    const std::uint32_t s = lay.s, t = tm.t;
    const BigInt S = s;

    CompiledTag out;
    out.layout = lay;
    out.sys.s = s;
    out.sys.alphabet.resize(lay.size());
    out.sys.appendants.resize(lay.size());
    for (Symbol a = 0; a < lay.size(); ++a) out.sys.alphabet[a] = lay.name(a);

    // 1-based indices of the periodic words: a_k counts outward from the finite part.
    const auto w = cfg.leftPeriodic.size();
    const auto z = cfg.rightPeriodic.size();
    auto a_k = [&](std::size_t k) { return BigInt(cfg.leftPeriodic[w - k] + 1); };
    auto e_k = [&](std::size_t k) { return BigInt(cfg.rightPeriodic[k - 1] + 1); };

    BigInt leftRefill = ipow(s, w);
    for (std::size_t k = 2; k <= w; ++k) leftRefill += (S - a_k(k)) * ipow(s, k - 1);
    BigInt rightRefill = 0;
    for (std::size_t k = 2; k <= z; ++k) rightRefill += (S - e_k(k)) * ipow(s, k - 1);

    auto& app = out.sys.appendants;
    for (std::uint32_t i = 0; i < tm.m; ++i) {
        for (std::uint32_t j = 0; j < s; ++j) {
            append_run(app[lay.H(i)], lay.HPair(i, j), 1);
            append_run(app[lay.L(i)], lay.LPair(i, j), 1);
            append_run(app[lay.R(i)], lay.RPair(i, j), 1);
        }
        append_run(app[lay.RStar(i)], lay.R(i), S);

        for (std::uint32_t j = 0; j < t; ++j) {
            const auto& tr = tm.at(i, j);
            if (tr.move == Move::Halt) continue;  // empty appendants
            const BigInt J = j + 1;
            const BigInt ups = tr.write + 1;
            const auto g = tr.next;
            auto& h = app[lay.HPair(i, j)];
            if (tr.move == Move::Left) {
                append_run(h, lay.RStar(g), S * (S - ups));
                append_run(h, lay.H(g), J);
                append_run(app[lay.LPair(i, j)], lay.L(g), 1);
                append_run(app[lay.RPair(i, j)], lay.R(g), S * S);
            } else {
                append_run(h, lay.H(g), J);
                append_run(h, lay.L(g), S * (S - ups));
                append_run(app[lay.LPair(i, j)], lay.L(g), S * S);
                append_run(app[lay.RPair(i, j)], lay.R(g), 1);
            }
        }
        auto& hl = app[lay.HPair(i, t)];
        append_run(hl, lay.H(i), BigInt(t + 1) + S - a_k(1));
        append_run(hl, lay.L(i), leftRefill);
        auto& hr = app[lay.HPair(i, t + 1)];
        append_run(hr, lay.RStar(i), rightRefill);
        append_run(hr, lay.H(i), BigInt(t + 2) + S - e_k(1));
        for (std::uint32_t j = t; j < s; ++j) {
            append_run(app[lay.LPair(i, j)], lay.L(i), S);
            append_run(app[lay.RPair(i, j)], lay.R(i), S);
        }
    }

    const auto x = cfg.leftFinite.size();
    const auto y = cfg.rightFinite.size();
    BigInt lcount = ipow(s, x + 1);
    for (std::size_t k = 1; k <= x; ++k) lcount += (S - BigInt(cfg.leftFinite[x - k] + 1)) * ipow(s, k);
    BigInt rcount = 0;
    for (std::size_t k = 1; k <= y; ++k) rcount += (S - BigInt(cfg.rightFinite[k - 1] + 1)) * ipow(s, k);
    out.tape.push_back(lay.H(cfg.state), S + 1 - BigInt(cfg.head + 1));
    out.tape.push_back(lay.L(cfg.state), lcount);
    out.tape.push_back(lay.R(cfg.state), rcount);
    return out;
}

DecodedTm decode_tag_tape(const TagTape& tape, const CmLayout& lay, const BigInt& skip) {
    using K = TagSymbolId::Kind;
    const auto& runs = tape.runs();
    if (runs.empty() || runs.size() > 3) fail(ErrorKind::NotCanonical, "tape is not made of H, L, R runs");
    const std::uint32_t s = lay.s;

    // The tape may be any rotation of H L R (the R run can be absent).
    std::size_t hIndex = runs.size();
    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (runs[i].sym >= lay.size()) fail(ErrorKind::NotCanonical, "symbol outside the layout");
        if (lay.describe(runs[i].sym).kind == K::H) hIndex = i;
    }
    if (hIndex == runs.size()) fail(ErrorKind::NotCanonical, "no H run");
    const auto gamma = lay.describe(runs[hIndex].sym).state;
    const K order[3] = {K::H, K::L, K::R};
    for (std::size_t k = 0; k < runs.size(); ++k) {
        auto id = lay.describe(runs[(hIndex + k) % runs.size()].sym);
        if (id.kind != order[k] || id.state != gamma) fail(ErrorKind::NotCanonical, "runs are not H, L, R of one state");
    }
    if (runs.size() < 2) fail(ErrorKind::NotCanonical, "no L run");

    // Count the reads that land in each run during the coming pass.
    BigInt off = skip;
    BigInt reads[3] = {0, 0, 0};
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& r = runs[i];
        BigInt n = 0;
        if (r.count > off) n = (r.count - off + s - 1) / s;
        std::size_t k = (i + runs.size() - hIndex) % runs.size();
        reads[k] = n;
        off = off + n * s - r.count;
    }
    if (reads[0] != 1) fail(ErrorKind::NotCanonical, "H run not read exactly once");

    DecodedTm d;
    d.state = gamma;
    d.head = static_cast<Symbol>(off % s);

    BigInt nl = reads[1];
    std::vector<std::uint32_t> ld;
    while (nl > 0) {
        ld.push_back(static_cast<std::uint32_t>(nl % s));
        nl /= s;
    }
    if (ld.empty() || ld.back() != 1) fail(ErrorKind::NotCanonical, "left count lacks its end marker digit");
    for (std::size_t k = 0; k + 1 < ld.size(); ++k) d.left.push_back(s - ld[k] - 1);
    BigInt nr = reads[2];
    while (nr > 0) {
        d.right.push_back(static_cast<std::uint32_t>(s - nr % s - 1));
        nr /= s;
    }
    return d;
}

TmConfiguration to_configuration(const DecodedTm& d, const CmLayout& lay, const std::vector<Symbol>& leftPeriodic,
                                 const std::vector<Symbol>& rightPeriodic) {
    for (auto a : d.left)
        if (a >= lay.t) fail(ErrorKind::NotCanonical, "reserved symbol in the left part");
    for (auto a : d.right)
        if (a >= lay.t) fail(ErrorKind::NotCanonical, "reserved symbol in the right part");
    TmConfiguration c;
    c.state = d.state;
    c.leftPeriodic = leftPeriodic;
    c.rightPeriodic = rightPeriodic;
    for (auto it = d.left.rbegin(); it != d.left.rend(); ++it) c.leftFinite.push_back(*it);
    c.rightFinite.assign(d.right.begin(), d.right.end());
    if (d.head < lay.t) {
        c.head = d.head;
    } else if (d.head == lay.t) {
        if (!d.left.empty()) fail(ErrorKind::NotCanonical, "head on the left marker with cells beyond it");
        c.leftFinite.assign(leftPeriodic.begin(), leftPeriodic.end() - 1);
        c.head = leftPeriodic.back();
    } else {
        if (!d.right.empty()) fail(ErrorKind::NotCanonical, "head on the right marker with cells beyond it");
        c.rightFinite.assign(rightPeriodic.begin() + 1, rightPeriodic.end());
        c.head = rightPeriodic.front();
    }
    return c;
}

DecodedTm describe_configuration(const TmConfiguration& cfg) {
    DecodedTm d;
    d.state = cfg.state;
    d.head = cfg.head;
    d.left.assign(cfg.leftFinite.rbegin(), cfg.leftFinite.rend());
    d.right.assign(cfg.rightFinite.begin(), cfg.rightFinite.end());
    return d;
}

}  // namespace forge
