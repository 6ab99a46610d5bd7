#include "forge/nearywoods.hpp"

#include <map>
#include <sstream>

namespace forge::nw {

// ---- machines --------------------------------------------------------------

RightTm RightTm::make(std::uint32_t states) {
    RightTm tm;
    tm.k = states;
    tm.table.assign(std::size_t(states) * 2, RightTransition{});
    for (std::uint32_t i = 0; i < states; ++i) tm.stateNames.push_back("q" + std::to_string(i + 1));
    return tm;
}

void RightTm::set(StateId q, std::uint8_t c, std::vector<std::uint8_t> write, StateId next) {
    auto& tr = table[q * 2 + c];
    tr.halt = false;
    tr.write = std::move(write);
    tr.next = next;
}

void RightTm::validate() const {
    if (k == 0) fail(ErrorKind::Input, "machine needs at least one state");
    if (table.size() != std::size_t(k) * 2) fail(ErrorKind::Input, "transition table incomplete");
    for (const auto& tr : table) {
        if (tr.halt) continue;
        if (tr.write.empty() || tr.write.size() > 2) fail(ErrorKind::Input, "a transition writes one or two cells");
        for (auto c : tr.write)
            if (c > 1) fail(ErrorKind::Input, "cells are A or B");
        if (tr.next >= k) fail(ErrorKind::Input, "next state out of range");
    }
}

std::string RightTm::state_name(StateId q) const {
    return q < stateNames.size() ? stateNames[q] : "q" + std::to_string(q + 1);
}

std::vector<std::uint8_t> cells_from_string(const std::string& s) {
    std::vector<std::uint8_t> out;
    for (char c : s) {
        if (c == 'A')
            out.push_back(A);
        else if (c == 'B')
            out.push_back(B);
        else if (c != ',' && !std::isspace(static_cast<unsigned char>(c)))
            fail(ErrorKind::Input, std::string("cells are A or B, got ") + c);
    }
    return out;
}

std::string cells_to_string(const std::vector<std::uint8_t>& c) {
    std::string s;
    for (auto x : c) s.push_back(x ? 'B' : 'A');
    return s;
}

RightTm parse_rtm(const std::string& text) {
    std::istringstream is(text);
    std::string raw;
    bool header = false;
    std::vector<std::string> names;
    std::vector<std::pair<std::size_t, std::vector<std::string>>> rules;
    std::size_t n = 0;
    while (std::getline(is, raw)) {
        ++n;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string w; ls >> w;) tok.push_back(w);
        if (tok.empty()) continue;
        if (!header) {
            if (tok.size() != 2 || tok[0] != "forge-rtm" || tok[1] != "1")
                fail(ErrorKind::Input, "expected header 'forge-rtm 1'");
            header = true;
        } else if (tok[0] == "states") {
            names.assign(tok.begin() + 1, tok.end());
        } else {
            rules.emplace_back(n, tok);
        }
    }
    if (!header || names.empty()) fail(ErrorKind::Input, "machine needs a header and a 'states' line");
    auto tm = RightTm::make(static_cast<std::uint32_t>(names.size()));
    tm.stateNames = names;
    std::map<std::string, StateId> idx;
    for (StateId q = 0; q < names.size(); ++q)
        if (!idx.emplace(names[q], q).second) fail(ErrorKind::Input, "duplicate state " + names[q]);
    std::vector<bool> seen(tm.table.size(), false);
    for (const auto& [line, t] : rules) {
        auto where = "line " + std::to_string(line) + ": ";
        if (t.size() < 4 || t[2] != "->") fail(ErrorKind::Input, where + "expected 'state cell -> cells next' or '-> halt'");
        auto qi = idx.find(t[0]);
        if (qi == idx.end()) fail(ErrorKind::Input, where + "unknown state " + t[0]);
        if (t[1] != "A" && t[1] != "B") fail(ErrorKind::Input, where + "cell must be A or B");
        std::uint8_t c = t[1] == "A" ? A : B;
        if (seen[qi->second * 2 + c]) fail(ErrorKind::Input, where + "duplicate transition");
        seen[qi->second * 2 + c] = true;
        if (t.size() == 4 && t[3] == "halt") continue;
        if (t.size() != 5) fail(ErrorKind::Input, where + "expected 'state cell -> cells next'");
        auto ni = idx.find(t[4]);
        if (ni == idx.end()) fail(ErrorKind::Input, where + "unknown state " + t[4]);
        tm.set(qi->second, c, cells_from_string(t[3]), ni->second);
    }
    tm.validate();
    return tm;
}

std::string format_rtm(const RightTm& tm) {
    std::ostringstream os;
    os << "forge-rtm 1\nstates";
    for (StateId q = 0; q < tm.k; ++q) os << ' ' << tm.state_name(q);
    os << '\n';
    for (StateId q = 0; q < tm.k; ++q)
        for (std::uint8_t c = 0; c < 2; ++c) {
            const auto& tr = tm.at(q, c);
            os << tm.state_name(q) << ' ' << (c ? 'B' : 'A') << " -> ";
            if (tr.halt)
                os << "halt\n";
            else
                os << cells_to_string(tr.write) << ' ' << tm.state_name(tr.next) << '\n';
        }
    return os.str();
}

std::optional<CircularConfig> circular_step(const RightTm& tm, const CircularConfig& c) {
    if (c.cells.empty()) fail(ErrorKind::Input, "circular tape is empty");
    const auto& tr = tm.at(c.state, c.cells.front());
    if (tr.halt) return std::nullopt;
    CircularConfig n = c;
    n.cells.pop_front();
    n.cells.insert(n.cells.end(), tr.write.begin(), tr.write.end());
    n.state = tr.next;
    return n;
}

// ---- symbols ---------------------------------------------------------------

char letter_char(Letter l) {
    static const char chars[] = "HhPQUuXxVvYyAaBbCcDd-0";
    return chars[static_cast<int>(l)];
}

Symbol NwLayout::id(const NwSymbol& s) const {
    if (s.letter == Letter::Dash) return 0;
    if (s.letter == Letter::Zero) return 1;
    if (s.stage < 1 || s.stage > 6 || s.state >= k) fail(ErrorKind::Input, "symbol subscript out of range");
    return 2 + (static_cast<Symbol>(s.letter) * 6 + (s.stage - 1)) * k + s.state;
}

NwSymbol NwLayout::symbol(Symbol id) const {
    if (id == 0) return {Letter::Dash, 0, 0};
    if (id == 1) return {Letter::Zero, 0, 0};
    id -= 2;
    auto state = id % k;
    id /= k;
    return {static_cast<Letter>(id / 6), static_cast<std::uint8_t>(id % 6 + 1), state};
}

std::string NwLayout::name(Symbol id) const {
    auto s = symbol(id);
    std::string n(1, letter_char(s.letter));
    if (s.stage) n += "_" + std::to_string(s.stage) + "," + std::to_string(s.state + 1);
    return n;
}

NwSystem build_nw_system(const RightTm& tm) {
    tm.validate();
    NwSystem out;
    out.layout.k = tm.k;
    const auto& lay = out.layout;
    out.sys.s = 2;
    out.sys.alphabet.resize(lay.size());
    out.sys.appendants.resize(lay.size());
    out.used.assign(lay.size(), false);
    for (Symbol i = 0; i < lay.size(); ++i) out.sys.alphabet[i] = lay.name(i);
    out.used[1] = true;  // '0' is read in stage 1 and appends nothing

    using L = Letter;
    const NwSymbol dash{L::Dash, 0, 0}, zero{L::Zero, 0, 0};
    for (StateId q = 0; q < tm.k; ++q) {
        auto S = [q](L l, std::uint8_t stage, StateId st) { return NwSymbol{l, stage, st}; };
        auto rule = [&](L l, std::uint8_t stage, std::vector<NwSymbol> w) {
            auto id = lay.id(S(l, stage, q));
            RleWord r;
            for (const auto& x : w) append_run(r, lay.id(x), 1);
            out.sys.appendants[id] = std::move(r);
            out.used[id] = true;
        };
        auto s3 = [&](L l) { return S(l, 3, q); };
        auto s4 = [&](L l) { return S(l, 4, q); };
        auto s1 = [&](L l) { return S(l, 1, q); };
        auto s2 = [&](L l) { return S(l, 2, q); };
        auto s5 = [&](L l) { return S(l, 5, q); };
        auto s6 = [&](L l) { return S(l, 6, q); };

        // stage 2: halve the counter; reading lower case clears the growth flag
        rule(L::H, 2, {s3(L::H), dash});
        rule(L::h, 2, {dash, s3(L::H), dash});
        for (L l : {L::A, L::B, L::C, L::D, L::X, L::Y}) rule(l, 2, {s3(l), s3(l)});
        rule(L::x, 2, {s3(L::Y), s3(L::Y)});
        rule(L::U, 2, {s3(L::U)});
        rule(L::u, 2, {s3(L::V)});
        rule(L::V, 2, {s3(L::V)});

        // stage 3
        rule(L::H, 3, {s4(L::H), s4(L::h)});
        rule(L::A, 3, {s4(L::A), s4(L::a)});
        rule(L::B, 3, {s4(L::B), s4(L::b)});
        rule(L::C, 3, {s4(L::C), s4(L::c)});
        rule(L::D, 3, {s4(L::D), s4(L::d)});
        rule(L::U, 3, {s4(L::U), s4(L::u), s4(L::X), s4(L::x)});
        rule(L::V, 3, {s4(L::V), s4(L::v), s4(L::Y), s4(L::y)});
        rule(L::X, 3, {s4(L::X), s4(L::x)});
        rule(L::Y, 3, {s4(L::Y), s4(L::y)});

        // stage 4, upper case: back to stage 1
        rule(L::H, 4, {s1(L::H), dash});
        rule(L::A, 4, {s1(L::A), s1(L::a), zero});
        rule(L::B, 4, {s1(L::B), s1(L::b), zero});
        for (L l : {L::C, L::D, L::U, L::V, L::X, L::Y}) rule(l, 4, {s1(l), s1(l)});
        // stage 4, lower case: on to stage 5
        rule(L::h, 4, {});
        rule(L::a, 4, {dash, s5(L::P), dash});
        rule(L::b, 4, {dash, s5(L::Q), dash});
        rule(L::c, 4, {s5(L::A), dash});
        rule(L::d, 4, {s5(L::B), dash});
        rule(L::u, 4, {});
        rule(L::v, 4, {});
        rule(L::x, 4, {s5(L::U), s4(L::x)});
        rule(L::y, 4, {s5(L::V), s4(L::y)});

        // stage 1: every second live cell is eliminated
        rule(L::H, 1, {s2(L::H), s2(L::h)});
        rule(L::A, 1, {s2(L::A), s2(L::A)});
        rule(L::a, 1, {s2(L::C), s2(L::C)});
        rule(L::B, 1, {s2(L::B), s2(L::B)});
        rule(L::b, 1, {s2(L::D), s2(L::D)});
        for (L l : {L::C, L::D, L::V, L::Y}) rule(l, 1, {s2(l), s2(l)});
        rule(L::U, 1, {s2(L::U), s2(L::u)});
        rule(L::X, 1, {s2(L::X), s2(L::x)});

        // stage 5
        rule(L::P, 5, {s6(L::P), dash});
        rule(L::Q, 5, {s6(L::Q)});
        rule(L::A, 5, {s6(L::A), s6(L::a)});
        rule(L::B, 5, {s6(L::B), s6(L::b)});
        rule(L::U, 5, {s6(L::U), s6(L::u)});
        rule(L::V, 5, {s6(L::V), s6(L::v)});

        // stage 6: upper case letters mean the scanned cell was A, lower case B
        for (std::uint8_t c = 0; c < 2; ++c) {
            const auto& tr = tm.at(q, c);
            const bool upper = c == A;
            const L head = upper ? L::P : L::Q;
            const L la = upper ? L::A : L::a, lb = upper ? L::B : L::b;
            const L lu = upper ? L::U : L::u, lv = upper ? L::V : L::v;
            if (tr.halt) {
                for (L l : {head, la, lb, lu, lv}) rule(l, 6, {});
                continue;
            }
            auto n3 = [&](L l) { return S(l, 3, tr.next); };
            std::vector<NwSymbol> w;
            for (auto cell : tr.write) {
                w.push_back(s6(cell == A ? L::A : L::B));
                w.push_back(s6(cell == A ? L::a : L::b));
            }
            if (!upper) w.push_back(dash);
            w.push_back(n3(L::H));
            w.push_back(dash);
            rule(head, 6, w);
            rule(la, 6, {n3(L::A), n3(L::A)});
            rule(lb, 6, {n3(L::B), n3(L::B)});
            if (tr.write.size() == 2)
                rule(lu, 6, {n3(L::U), n3(L::U)});
            else
                rule(lu, 6, {n3(L::U)});
            rule(lv, 6, {n3(L::U)});
        }
    }
    return out;
}

std::vector<NwSymbol> encode_nw_tape(const RightTm& tm, const std::vector<std::uint8_t>& tape, StateId state,
                                     std::size_t counterAt) {
    if (tape.empty()) fail(ErrorKind::Input, "circular tape must be non-empty");
    if (state >= tm.k) fail(ErrorKind::Input, "state out of range");
    std::size_t counter = 1;
    while (counter < tape.size()) counter *= 2;
    counterAt = std::min(counterAt, tape.size());
    std::vector<NwSymbol> w{{Letter::H, 2, state}, {Letter::h, 2, state}};
    auto put_counter = [&] {
        for (std::size_t i = 0; i < counter; ++i) {
            w.push_back({Letter::U, 2, state});
            w.push_back({Letter::u, 2, state});
        }
    };
    for (std::size_t i = 0; i < tape.size(); ++i) {
        if (i == counterAt) put_counter();
        Letter l = tape[i] == A ? Letter::A : Letter::B;
        w.push_back({l, 2, state});
        w.push_back({l, 2, state});
    }
    if (counterAt == tape.size()) put_counter();
    return w;
}

std::string print_symbols(const std::vector<NwSymbol>& w) {
    std::string s;
    for (const auto& x : w) {
        if (!s.empty()) s.push_back(' ');
        s.push_back(letter_char(x.letter));
    }
    return s;
}

// ---- traced run ------------------------------------------------------------

namespace {

struct Item {
    Symbol id;
    std::uint64_t gen;
    std::uint64_t prod;        // serial of the read that appended it
    std::uint32_t pos;         // offset within that read's appendant
    std::uint8_t parentStage;  // stage of that read
};

bool is_head(Letter l) { return l == Letter::H || l == Letter::h || l == Letter::P || l == Letter::Q; }

}  // namespace

NwTrace nw_trace(const RightTm& tm, const std::vector<std::uint8_t>& tape, StateId state, std::size_t tmSteps,
                 const NwOptions& opt) {
    auto nws = build_nw_system(tm);
    const auto& lay = nws.layout;
    NwTrace trace;
    std::deque<Item> q;
    {
        auto w = encode_nw_tape(tm, tape, state, opt.counterAt);
        for (std::size_t i = 0; i < w.size(); ++i) q.push_back({lay.id(w[i]), 0, i, 0, 0});
    }
    auto letters = [&](auto begin, auto end) {
        std::string s;
        for (auto it = begin; it != end; ++it) {
            if (!s.empty()) s.push_back(' ');
            s.push_back(letter_char(lay.symbol(it->id).letter));
        }
        return s;
    };

    int curStage = -1;
    int prevStage = -1;
    bool prevRevisit = false;
    std::optional<Item> partner;  // the symbol deleted unread by the previous step
    std::uint64_t sinceDecode = 0;
    std::size_t stage1Passes = 0;

    while (trace.steps.size() < tmSteps) {
        if (q.size() < 2) {
            trace.halted = true;
            break;
        }
        if (trace.tagSteps >= opt.tagStepBudget) fail(ErrorKind::Stuck, "tag step budget exhausted");
        const Item front = q.front();
        const auto sym = lay.symbol(front.id);
        if (!nws.used[front.id] || sym.letter == Letter::Dash)
            fail(ErrorKind::Parity, "read " + lay.name(front.id) + " at tag step " + std::to_string(trace.tagSteps) +
                                        ", which a correct run never reads");

        const bool revisit = (sym.letter == Letter::x || sym.letter == Letter::y) && front.parentStage == sym.stage;
        const bool starts = is_head(sym.letter) || (revisit && !prevRevisit);
        prevRevisit = revisit;
        if (starts) {
            prevStage = curStage;
            curStage = sym.stage;
            if (opt.keepPasses) {
                NwPass p;
                p.stage = curStage;
                p.counterRevisit = revisit;
                p.generation = front.gen;
                p.tagStep = trace.tagSteps;
                p.text = letters(q.begin(), q.end());
                if (front.pos % 2 == 1) {
                    if (!partner || partner->prod != front.prod || partner->pos + 1 != front.pos)
                        fail(ErrorKind::Parity, "pass starts at an odd offset without its partner symbol");
                    p.text = std::string(1, letter_char(lay.symbol(partner->id).letter)) + " " + p.text;
                }
                trace.passes.push_back(std::move(p));
            }
            if (curStage == 1) ++stage1Passes;
            if (curStage == 3 && prevStage == 6) {
                NwStep st;
                st.config.state = sym.state;
                std::vector<std::uint8_t> cells;
                for (const auto& it : q) {
                    auto s = lay.symbol(it.id);
                    if (s.stage != 3 && s.stage != 0) fail(ErrorKind::Parity, "mixed stages after a simulated step: " + lay.name(it.id));
                    if (s.letter == Letter::U) ++st.counter;
                    else if (s.letter == Letter::A || s.letter == Letter::B) cells.push_back(s.letter == Letter::A ? A : B);
                    else if (s.letter != Letter::H && s.letter != Letter::Dash)
                        fail(ErrorKind::Parity, "unexpected symbol after a simulated step");
                }
                if (cells.size() % 2) fail(ErrorKind::Parity, "tape cells are not doubled");
                for (std::size_t i = 0; i < cells.size(); i += 2) {
                    if (cells[i] != cells[i + 1]) fail(ErrorKind::Parity, "doubled cell halves differ");
                    st.config.cells.push_back(cells[i]);
                }
                st.tagSteps = sinceDecode;
                st.cycles = stage1Passes;
                trace.steps.push_back(std::move(st));
                sinceDecode = 0;
                stage1Passes = 0;
            }
        }

        q.pop_front();
        partner = q.front();
        q.pop_front();
        const auto serial = trace.tagSteps + 1;
        std::uint32_t pos = 0;
        for (const auto& r : nws.sys.appendants[front.id])
            for (BigInt n = 0; n < r.count; ++n) q.push_back({r.sym, front.gen + 1, serial, pos++, sym.stage});
        ++trace.tagSteps;
        ++sinceDecode;
    }
    return trace;
}

}  // namespace forge::nw
