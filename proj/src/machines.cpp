#include "forge/machines.hpp"

#include <sstream>

namespace forge {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Input: return "input";
    case ErrorKind::NotCanonical: return "not-canonical";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::CorruptLibrary: return "corrupt-library";
    case ErrorKind::Parity: return "parity";
    case ErrorKind::Stuck: return "stuck";
    case ErrorKind::TooLarge: return "too-large";
    }
    return "unknown";
}

std::uint64_t to_u64(const BigInt& v, const char* what) {
    if (v < 0 || v > std::numeric_limits<std::uint64_t>::max())
        fail(ErrorKind::TooLarge, std::string(what) + " does not fit in 64 bits: " + v.str());
    return static_cast<std::uint64_t>(v);
}

// ---- Turing machines -------------------------------------------------------

TuringMachine TuringMachine::make(std::uint32_t states, std::uint32_t symbols) {
    TuringMachine tm;
    tm.m = states;
    tm.t = symbols;
    tm.table.assign(std::size_t(states) * symbols, Transition{});
    for (std::uint32_t i = 0; i < states; ++i) tm.stateNames.push_back("q" + std::to_string(i + 1));
    for (std::uint32_t j = 0; j < symbols; ++j) tm.symbolNames.push_back(std::to_string(j + 1));
    return tm;
}

void TuringMachine::set(StateId q, Symbol a, Symbol write, Move move, StateId next) {
    at(q, a) = Transition{write, move, next};
}

void TuringMachine::validate() const {
    if (m == 0 || t == 0) fail(ErrorKind::Input, "machine needs at least one state and one symbol");
    if (table.size() != std::size_t(m) * t) fail(ErrorKind::Input, "transition table has wrong size");
    for (StateId q = 0; q < m; ++q)
        for (Symbol a = 0; a < t; ++a) {
            const auto& tr = at(q, a);
            if (tr.move == Move::Halt) continue;
            if (tr.write >= t || tr.next >= m)
                fail(ErrorKind::Input, "transition (" + state_name(q) + ", " + symbol_name(a) + ") out of range");
        }
}

std::string TuringMachine::state_name(StateId q) const {
    return q < stateNames.size() ? stateNames[q] : "q" + std::to_string(q + 1);
}

std::string TuringMachine::symbol_name(Symbol a) const {
    return a < symbolNames.size() ? symbolNames[a] : "s" + std::to_string(a + 1);
}

Symbol TmConfiguration::cell(std::int64_t offset) const {
    if (offset == 0) return head;
    if (offset < 0) {
        auto k = static_cast<std::uint64_t>(-offset);
        if (k <= leftFinite.size()) return leftFinite[leftFinite.size() - k];
        k -= leftFinite.size();
        auto w = leftPeriodic.size();
        return leftPeriodic[w - 1 - (k - 1) % w];
    }
    auto k = static_cast<std::uint64_t>(offset);
    if (k <= rightFinite.size()) return rightFinite[k - 1];
    k -= rightFinite.size();
    return rightPeriodic[(k - 1) % rightPeriodic.size()];
}

void TmConfiguration::validate(const TuringMachine& tm) const {
    if (leftPeriodic.empty() || rightPeriodic.empty()) fail(ErrorKind::Input, "periodic tape words must be non-empty");
    if (state >= tm.m) fail(ErrorKind::Input, "state out of range");
    auto check = [&](Symbol a) {
        if (a >= tm.t) fail(ErrorKind::Input, "tape symbol out of range");
    };
    check(head);
    for (auto a : leftPeriodic) check(a);
    for (auto a : leftFinite) check(a);
    for (auto a : rightFinite) check(a);
    for (auto a : rightPeriodic) check(a);
}

bool same_window(const TmConfiguration& a, const TmConfiguration& b, std::int64_t radius) {
    if (a.state != b.state) return false;
    for (std::int64_t k = -radius; k <= radius; ++k)
        if (a.cell(k) != b.cell(k)) return false;
    return true;
}

std::string format_window(const TuringMachine& tm, const TmConfiguration& c, std::int64_t radius) {
    std::ostringstream os;
    os << tm.state_name(c.state) << ":";
    for (std::int64_t k = -radius; k <= radius; ++k) {
        os << ' ';
        if (k == 0) os << '[';
        os << tm.symbol_name(c.cell(k));
        if (k == 0) os << ']';
    }
    return os.str();
}

std::optional<TmConfiguration> tm_step(const TuringMachine& tm, const TmConfiguration& cfg) {
    if (cfg.state >= tm.m || cfg.head >= tm.t) fail(ErrorKind::Input, "malformed configuration");
    const auto& tr = tm.at(cfg.state, cfg.head);
    if (tr.move == Move::Halt) return std::nullopt;
    TmConfiguration next = cfg;
    next.state = tr.next;
    if (tr.move == Move::Left) {
        next.rightFinite.push_front(tr.write);
        if (next.leftFinite.empty()) next.leftFinite.assign(cfg.leftPeriodic.begin(), cfg.leftPeriodic.end());
        next.head = next.leftFinite.back();
        next.leftFinite.pop_back();
    } else {
        next.leftFinite.push_back(tr.write);
        if (next.rightFinite.empty()) next.rightFinite.assign(cfg.rightPeriodic.begin(), cfg.rightPeriodic.end());
        next.head = next.rightFinite.front();
        next.rightFinite.pop_front();
    }
    return next;
}

// ---- run-length words ------------------------------------------------------

BigInt word_length(const RleWord& w) {
    BigInt n = 0;
    for (const auto& r : w) n += r.count;
    return n;
}

void append_run(RleWord& w, Symbol sym, const BigInt& count) {
    if (count == 0) return;
    if (!w.empty() && w.back().sym == sym)
        w.back().count += count;
    else
        w.push_back({sym, count});
}

RleWord rle_from_symbols(const std::vector<Symbol>& syms) {
    RleWord w;
    for (auto a : syms) append_run(w, a, 1);
    return w;
}

std::vector<Symbol> expand_word(const RleWord& w, std::uint64_t limit) {
    if (word_length(w) > limit) fail(ErrorKind::TooLarge, "word too long to expand");
    std::vector<Symbol> out;
    for (const auto& r : w) out.insert(out.end(), static_cast<std::size_t>(r.count), r.sym);
    return out;
}

void TagSystem::validate() const {
    if (s == 0) fail(ErrorKind::Input, "deletion number must be positive");
    if (appendants.size() != alphabet.size()) fail(ErrorKind::Input, "one appendant per alphabet symbol required");
    for (const auto& w : appendants)
        for (const auto& r : w)
            if (r.sym >= alphabet.size()) fail(ErrorKind::Input, "appendant symbol outside the alphabet");
}

TagTape::TagTape(const RleWord& w) {
    for (const auto& r : w) push_back(r.sym, r.count);
}

TagTape TagTape::from_symbols(const std::vector<Symbol>& syms) { return TagTape(rle_from_symbols(syms)); }

void TagTape::push_back(Symbol sym, const BigInt& count) {
    if (count == 0) return;
    if (!runs_.empty() && runs_.back().sym == sym)
        runs_.back().count += count;
    else
        runs_.push_back({sym, count});
    length_ += count;
}

void TagTape::append(const RleWord& w) {
    for (const auto& r : w) push_back(r.sym, r.count);
}

void TagTape::drop_front(BigInt n) {
    while (n > 0 && !runs_.empty()) {
        auto& r = runs_.front();
        if (r.count <= n) {
            n -= r.count;
            length_ -= r.count;
            runs_.pop_front();
        } else {
            r.count -= n;
            length_ -= n;
            n = 0;
        }
    }
}

std::vector<Symbol> TagTape::expand(std::uint64_t limit) const { return expand_word(word(), limit); }

std::optional<TagTape> tag_step(const TagSystem& sys, const TagTape& tape) {
    if (tape.length() < sys.s) return std::nullopt;
    auto first = tape.front();
    if (first >= sys.appendants.size()) fail(ErrorKind::Input, "tape symbol outside the alphabet");
    TagTape next = tape;
    next.drop_front(sys.s);
    next.append(sys.appendants[first]);
    return next;
}

// ---- batched tag interpreter -----------------------------------------------

namespace {

TagSeg make_run(Symbol sym, const BigInt& n) {
    TagSeg g;
    g.sym = sym;
    g.count = n;
    g.len = n;
    return g;
}

BigInt body_length(const std::vector<TagSeg>& body) {
    BigInt n = 0;
    for (const auto& g : body) n += g.len;
    return n;
}

void emit(std::vector<TagSeg>& out, TagSeg g);

void emit_repeat(std::vector<TagSeg>& out, const std::shared_ptr<const std::vector<TagSeg>>& body, const BigInt& k) {
    if (k == 0 || body->empty()) return;
    if (k == 1) {
        for (const auto& g : *body) emit(out, g);
        return;
    }
    if (body->size() == 1) {
        const auto& only = body->front();
        if (!only.body) {
            emit(out, make_run(only.sym, only.count * k));
        } else {
            TagSeg g;
            g.body = only.body;
            g.count = only.count * k;
            g.len = only.len * k;
            emit(out, g);
        }
        return;
    }
    TagSeg g;
    g.body = body;
    g.count = k;
    g.len = body_length(*body) * k;
    out.push_back(std::move(g));
}

void emit(std::vector<TagSeg>& out, TagSeg g) {
    if (g.len == 0) return;
    if (!g.body && !out.empty() && !out.back().body && out.back().sym == g.sym) {
        out.back().count += g.count;
        out.back().len += g.len;
        return;
    }
    out.push_back(std::move(g));
}

}  // namespace

TagRunner::TagRunner(const TagSystem& sys, const TagTape& tape) : sys_(sys) {
    sys.validate();
    for (const auto& w : sys.appendants) {
        auto body = std::make_shared<std::vector<Seg>>();
        for (const auto& r : w) emit(*body, make_run(r.sym, r.count));
        appendantSegs_.push_back(std::move(body));
    }
    for (const auto& r : tape.runs()) push_back(make_run(r.sym, r.count));
}

const BigInt& TagRunner::length() const { return length_; }

void TagRunner::push_back(Seg seg) {
    if (seg.len == 0) return;
    length_ += seg.len;
    if (!seg.body && !tape_.empty() && !tape_.back().body && tape_.back().sym == seg.sym) {
        tape_.back().count += seg.count;
        tape_.back().len += seg.len;
        return;
    }
    tape_.push_back(std::move(seg));
}

void TagRunner::expand_front() {
    Seg f = std::move(tape_.front());
    tape_.pop_front();
    if (f.count > 1) {
        Seg rest;
        rest.body = f.body;
        rest.count = f.count - 1;
        rest.len = f.len - body_length(*f.body);
        tape_.push_front(std::move(rest));
    }
    for (auto it = f.body->rbegin(); it != f.body->rend(); ++it) tape_.push_front(*it);
}

void TagRunner::settle_skip(bool expand) {
    while (skip_ > 0 && !tape_.empty()) {
        auto& f = tape_.front();
        if (f.len <= skip_) {
            skip_ -= f.len;
            length_ -= f.len;
            tape_.pop_front();
        } else if (!f.body) {
            f.count -= skip_;
            f.len -= skip_;
            length_ -= skip_;
            skip_ = 0;
        } else if (expand) {
            expand_front();
        } else {
            break;
        }
    }
    if (tape_.empty()) skip_ = 0;
}

void TagRunner::consume(const Seg& seg, BigInt& skip, std::vector<Seg>& out) {
    if (skip >= seg.len) {
        skip -= seg.len;
        return;
    }
    const BigInt s = sys_.s;
    if (!seg.body) {
        BigInt reads = (seg.len - skip + s - 1) / s;
        if (seg.sym >= appendantSegs_.size()) fail(ErrorKind::Input, "tape symbol outside the alphabet");
        emit_repeat(out, appendantSegs_[seg.sym], reads);
        steps_ += reads;
        skip = skip + reads * s - seg.len;
        return;
    }
    // Walk repetitions until the entry offset repeats, then jump over whole cycles.
    std::vector<std::vector<Seg>> perRep;
    std::vector<std::int64_t> seenAt(sys_.s + 1, -1);
    std::vector<BigInt> stepsAt;
    BigInt done = 0;
    while (done < seg.count) {
        auto p = static_cast<std::size_t>(skip);
        if (seenAt[p] >= 0) {
            auto i0 = static_cast<std::size_t>(seenAt[p]);
            auto cycle = perRep.size() - i0;
            for (std::size_t r = 0; r < i0; ++r)
                for (auto& g : perRep[r]) emit(out, std::move(g));
            auto content = std::make_shared<std::vector<Seg>>();
            for (std::size_t r = i0; r < perRep.size(); ++r)
                for (auto& g : perRep[r]) emit(*content, std::move(g));
            BigInt q = (seg.count - i0) / cycle;
            BigInt cycleSteps = steps_ - stepsAt[i0];
            emit_repeat(out, content, q);
            steps_ = stepsAt[i0] + cycleSteps * q;
            BigInt left = seg.count - i0 - q * cycle;
            for (; left > 0; --left)
                for (const auto& child : *seg.body) consume(child, skip, out);
            return;
        }
        seenAt[p] = static_cast<std::int64_t>(perRep.size());
        stepsAt.push_back(steps_);
        perRep.emplace_back();
        for (const auto& child : *seg.body) consume(child, skip, perRep.back());
        ++done;
    }
    for (auto& rep : perRep)
        for (auto& g : rep) emit(out, std::move(g));
}

bool TagRunner::advance() {
    if (halted_) return false;
    settle_skip(false);
    if (length_ - skip_ < sys_.s) {
        halted_ = true;
        return false;
    }
    // Reads in the last s symbols of the tape must be done one at a time, so
    // split them off the front segment when it reaches that far.
    {
        Seg& f = tape_.front();
        BigInt rest = length_ - f.len;
        if (rest < sys_.s) {
            BigInt need = sys_.s - rest;
            if (!f.body) {
                if (f.count <= need) return step();
                Seg tail = make_run(f.sym, need);
                f.count -= need;
                f.len -= need;
                tape_.insert(tape_.begin() + 1, std::move(tail));
            } else {
                BigInt unit = f.len / f.count;
                BigInt r = (need + unit - 1) / unit;
                if (f.count <= r) {
                    expand_front();
                    return true;
                }
                Seg tail;
                tail.body = f.body;
                tail.count = r;
                tail.len = unit * r;
                f.count -= r;
                f.len -= tail.len;
                tape_.insert(tape_.begin() + 1, std::move(tail));
            }
        }
    }
    Seg seg = std::move(tape_.front());
    tape_.pop_front();
    length_ -= seg.len;
    std::vector<Seg> out;
    BigInt skip = skip_;
    consume(seg, skip, out);
    for (auto& g : out) push_back(std::move(g));
    skip_ = skip;
    return true;
}

bool TagRunner::step() {
    if (halted_) return false;
    settle_skip(true);
    if (length_ < sys_.s) {
        halted_ = true;
        return false;
    }
    while (tape_.front().body) expand_front();
    Symbol first = tape_.front().sym;
    if (first >= appendantSegs_.size()) fail(ErrorKind::Input, "tape symbol outside the alphabet");
    for (const auto& g : *appendantSegs_[first]) push_back(g);
    skip_ = sys_.s;
    ++steps_;
    return true;
}

namespace {

void describe_seg(std::ostream& os, const TagSeg& g) {
    if (!g.body) {
        os << g.sym << '^' << g.count;
        return;
    }
    os << '(';
    for (std::size_t i = 0; i < g.body->size(); ++i) {
        if (i) os << ' ';
        describe_seg(os, (*g.body)[i]);
    }
    os << ")x" << g.count;
}

}  // namespace

std::string TagRunner::describe() const {
    std::ostringstream os;
    os << "skip " << skip_ << ':';
    for (const auto& g : tape_) {
        os << ' ';
        describe_seg(os, g);
    }
    return os.str();
}

std::optional<TagTape> TagRunner::flat_tape() const {
    TagTape t;
    BigInt skip = skip_;
    for (const auto& g : tape_) {
        if (skip >= g.len) {
            skip -= g.len;
            continue;
        }
        if (g.body) return std::nullopt;
        t.push_back(g.sym, g.count - skip);
        skip = 0;
    }
    return t;
}

// ---- cyclic tag systems ----------------------------------------------------

std::string bits_to_yn(const Bits& b) {
    std::string s;
    s.reserve(b.size());
    for (auto x : b) s.push_back(x ? 'Y' : 'N');
    return s;
}

Bits yn_to_bits(const std::string& s) {
    Bits b;
    b.reserve(s.size());
    for (char c : s) {
        if (c == 'Y' || c == 'y' || c == '1')
            b.push_back(1);
        else if (c == 'N' || c == 'n' || c == '0')
            b.push_back(0);
        else
            fail(ErrorKind::Input, std::string("not a Y/N symbol: ") + c);
    }
    return b;
}

void CyclicTagSystem::validate() const {
    if (appendants.empty()) fail(ErrorKind::Input, "cyclic tag system needs at least one appendant");
}

std::optional<CtsState> cts_step(const CyclicTagSystem& sys, const CtsState& st) {
    if (st.tape.empty()) return std::nullopt;
    if (st.marker >= sys.appendants.size()) fail(ErrorKind::Input, "marker out of range");
    CtsState next;
    next.tape.assign(st.tape.begin() + 1, st.tape.end());
    if (st.tape.front()) {
        const auto& app = sys.appendants[st.marker];
        next.tape.insert(next.tape.end(), app.begin(), app.end());
    }
    next.marker = (st.marker + 1) % sys.appendants.size();
    return next;
}

CtsRunner::CtsRunner(const CyclicTagSystem& sys, const Bits& tape, std::size_t marker)
    : sys_(sys), tape_(tape.begin(), tape.end()), marker_(marker) {
    sys.validate();
    if (marker >= sys.appendants.size()) fail(ErrorKind::Input, "marker out of range");
}

bool CtsRunner::step() {
    if (tape_.empty()) return false;
    bool y = tape_.front();
    tape_.pop_front();
    if (y) {
        const auto& app = sys_.appendants[marker_];
        tape_.insert(tape_.end(), app.begin(), app.end());
    }
    marker_ = (marker_ + 1) % sys_.appendants.size();
    ++steps_;
    return true;
}

}  // namespace forge
