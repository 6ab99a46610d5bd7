#include "forge/formats.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace forge {

namespace {

using Tokens = std::vector<std::string>;

struct Line {
    std::size_t number;
    Tokens tokens;
};

[[noreturn]] void bad(const Line& l, const std::string& msg) {
    fail(ErrorKind::Input, "line " + std::to_string(l.number) + ": " + msg);
}

// Splits into non-empty lines of tokens and checks the header.
std::vector<Line> lex(const std::string& text, const std::string& kind) {
    std::vector<Line> lines;
    std::istringstream is(text);
    std::string raw;
    std::size_t n = 0;
    bool header = false;
    while (std::getline(is, raw)) {
        ++n;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::istringstream ls(raw);
        Tokens tok;
        for (std::string w; ls >> w;) tok.push_back(w);
        if (tok.empty()) continue;
        if (!header) {
            if (tok.size() != 2 || tok[0] != "forge-" + kind)
                fail(ErrorKind::Input, "expected header 'forge-" + kind + " 1'");
            if (tok[1] != "1") fail(ErrorKind::Input, "unsupported forge-" + kind + " version " + tok[1]);
            header = true;
            continue;
        }
        lines.push_back({n, std::move(tok)});
    }
    if (!header) fail(ErrorKind::Input, "empty forge-" + kind + " file");
    return lines;
}

std::uint64_t parse_count(const Line& l, const std::string& s) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        bad(l, "not a number: " + s);
    }
    if (used != s.size()) bad(l, "not a number: " + s);
    return v;
}

std::int64_t parse_signed(const Line& l, const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        bad(l, "not a number: " + s);
    }
    if (used != s.size()) bad(l, "not a number: " + s);
    return v;
}

BigInt parse_big(const Line& l, const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) bad(l, "not a count: " + s);
    return BigInt(s);
}

std::map<std::string, std::uint32_t> index_of(const std::vector<std::string>& names, const char* what) {
    std::map<std::string, std::uint32_t> idx;
    for (std::uint32_t i = 0; i < names.size(); ++i)
        if (!idx.emplace(names[i], i).second) fail(ErrorKind::Input, std::string("duplicate ") + what + " " + names[i]);
    return idx;
}

std::uint32_t lookup(const Line& l, const std::map<std::string, std::uint32_t>& idx, const std::string& name,
                     const char* what) {
    auto it = idx.find(name);
    if (it == idx.end()) bad(l, std::string("unknown ") + what + " " + name);
    return it->second;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Input, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Input, "cannot write " + path);
    out << text;
    if (!out) fail(ErrorKind::Input, "write failed for " + path);
}

// ---- Turing machines -------------------------------------------------------

TuringMachine parse_tm(const std::string& text) {
    auto lines = lex(text, "tm");
    std::vector<std::string> states, symbols;
    std::vector<const Line*> rules;
    for (const auto& l : lines) {
        if (l.tokens[0] == "states")
            states.assign(l.tokens.begin() + 1, l.tokens.end());
        else if (l.tokens[0] == "symbols")
            symbols.assign(l.tokens.begin() + 1, l.tokens.end());
        else
            rules.push_back(&l);
    }
    if (states.empty() || symbols.empty()) fail(ErrorKind::Input, "machine needs 'states' and 'symbols' lines");
    auto tm = TuringMachine::make(static_cast<std::uint32_t>(states.size()), static_cast<std::uint32_t>(symbols.size()));
    tm.stateNames = states;
    tm.symbolNames = symbols;
    auto si = index_of(states, "state");
    auto ai = index_of(symbols, "symbol");
    std::vector<bool> seen(tm.table.size(), false);
    for (const auto* lp : rules) {
        const auto& l = *lp;
        const auto& t = l.tokens;
        if (t.size() < 4 || t[2] != "->") bad(l, "expected 'state symbol -> write move next' or 'state symbol -> halt'");
        auto q = lookup(l, si, t[0], "state");
        auto a = lookup(l, ai, t[1], "symbol");
        if (seen[q * tm.t + a]) bad(l, "duplicate transition");
        seen[q * tm.t + a] = true;
        if (t.size() == 4 && t[3] == "halt") continue;
        if (t.size() != 6) bad(l, "expected 'state symbol -> write move next'");
        Move mv;
        if (t[4] == "L" || t[4] == "left")
            mv = Move::Left;
        else if (t[4] == "R" || t[4] == "right")
            mv = Move::Right;
        else
            bad(l, "move must be L or R");
        tm.set(q, a, lookup(l, ai, t[3], "symbol"), mv, lookup(l, si, t[5], "state"));
    }
    tm.validate();
    return tm;
}

std::string format_tm(const TuringMachine& tm) {
    std::ostringstream os;
    os << "forge-tm 1\nstates";
    for (StateId q = 0; q < tm.m; ++q) os << ' ' << tm.state_name(q);
    os << "\nsymbols";
    for (Symbol a = 0; a < tm.t; ++a) os << ' ' << tm.symbol_name(a);
    os << '\n';
    for (StateId q = 0; q < tm.m; ++q)
        for (Symbol a = 0; a < tm.t; ++a) {
            const auto& tr = tm.at(q, a);
            os << tm.state_name(q) << ' ' << tm.symbol_name(a) << " -> ";
            if (tr.move == Move::Halt)
                os << "halt\n";
            else
                os << tm.symbol_name(tr.write) << ' ' << (tr.move == Move::Left ? 'L' : 'R') << ' '
                   << tm.state_name(tr.next) << '\n';
        }
    return os.str();
}

// ---- configurations --------------------------------------------------------

TmConfiguration parse_config(const std::string& text, const TuringMachine& tm) {
    auto lines = lex(text, "config");
    auto si = index_of(tm.stateNames, "state");
    auto ai = index_of(tm.symbolNames, "symbol");
    TmConfiguration c;
    bool haveState = false, haveHead = false;
    for (const auto& l : lines) {
        const auto& key = l.tokens[0];
        std::vector<Symbol> word;
        if (key != "state")
            for (std::size_t i = 1; i < l.tokens.size(); ++i) word.push_back(lookup(l, ai, l.tokens[i], "symbol"));
        if (key == "state") {
            if (l.tokens.size() != 2) bad(l, "expected 'state <name>'");
            c.state = lookup(l, si, l.tokens[1], "state");
            haveState = true;
        } else if (key == "head") {
            if (word.size() != 1) bad(l, "expected 'head <symbol>'");
            c.head = word[0];
            haveHead = true;
        } else if (key == "left-periodic") {
            c.leftPeriodic = word;
        } else if (key == "right-periodic") {
            c.rightPeriodic = word;
        } else if (key == "left") {
            c.leftFinite.assign(word.begin(), word.end());
        } else if (key == "right") {
            c.rightFinite.assign(word.begin(), word.end());
        } else {
            bad(l, "unknown key " + key);
        }
    }
    if (!haveState || !haveHead) fail(ErrorKind::Input, "configuration needs 'state' and 'head'");
    c.validate(tm);
    return c;
}

std::string format_config(const TmConfiguration& c, const TuringMachine& tm) {
    std::ostringstream os;
    auto word = [&](const char* key, auto begin, auto end) {
        os << key;
        for (auto it = begin; it != end; ++it) os << ' ' << tm.symbol_name(*it);
        os << '\n';
    };
    os << "forge-config 1\nstate " << tm.state_name(c.state) << '\n';
    word("left-periodic", c.leftPeriodic.begin(), c.leftPeriodic.end());
    word("left", c.leftFinite.begin(), c.leftFinite.end());
    os << "head " << tm.symbol_name(c.head) << '\n';
    word("right", c.rightFinite.begin(), c.rightFinite.end());
    word("right-periodic", c.rightPeriodic.begin(), c.rightPeriodic.end());
    return os.str();
}

// ---- tag systems -----------------------------------------------------------

TagFile parse_tag(const std::string& text) {
    auto lines = lex(text, "tag");
    TagFile f;
    bool haveS = false;
    std::vector<const Line*> rules;
    const Line* tapeLine = nullptr;
    for (const auto& l : lines) {
        if (l.tokens[0] == "s") {
            if (l.tokens.size() != 2) bad(l, "expected 's <deletion number>'");
            f.sys.s = static_cast<std::uint32_t>(parse_count(l, l.tokens[1]));
            haveS = true;
        } else if (l.tokens[0] == "tape") {
            if (l.tokens.size() < 2 || l.tokens[1] != "=") bad(l, "expected 'tape = <word>'");
            tapeLine = &l;
        } else {
            if (l.tokens.size() < 2 || l.tokens[1] != ":") bad(l, "expected 'symbol : appendant'");
            f.sys.alphabet.push_back(l.tokens[0]);
            rules.push_back(&l);
        }
    }
    if (!haveS) fail(ErrorKind::Input, "tag system needs an 's' line");
    auto idx = index_of(f.sys.alphabet, "symbol");
    auto word = [&](const Line& l) {
        RleWord w;
        for (std::size_t i = 2; i < l.tokens.size(); ++i) {
            const auto& tok = l.tokens[i];
            if (tok == "-") {
                if (l.tokens.size() != 3) bad(l, "'-' must stand alone");
                continue;
            }
            auto caret = tok.rfind('^');
            if (caret == std::string::npos)
                append_run(w, lookup(l, idx, tok, "symbol"), 1);
            else
                append_run(w, lookup(l, idx, tok.substr(0, caret), "symbol"), parse_big(l, tok.substr(caret + 1)));
        }
        return w;
    };
    for (const auto* l : rules) f.sys.appendants.push_back(word(*l));
    if (tapeLine) f.tape = TagTape(word(*tapeLine));
    f.sys.validate();
    return f;
}

std::string format_tag(const TagSystem& sys, const TagTape& tape) {
    std::ostringstream os;
    auto word = [&](const auto& runs) {
        if (runs.empty()) os << " -";
        for (const auto& r : runs) {
            os << ' ' << sys.alphabet[r.sym];
            if (r.count != 1) os << '^' << r.count;
        }
        os << '\n';
    };
    os << "forge-tag 1\ns " << sys.s << '\n';
    for (Symbol a = 0; a < sys.size(); ++a) {
        os << sys.alphabet[a] << " :";
        word(sys.appendants[a]);
    }
    os << "tape =";
    word(tape.runs());
    return os.str();
}

// ---- cyclic tag systems ----------------------------------------------------

CtsFile parse_cts(const std::string& text) {
    auto lines = lex(text, "cts");
    CtsFile f;
    for (const auto& l : lines) {
        const auto& t = l.tokens;
        if (t[0] == "tape") {
            if (t.size() != 2) bad(l, "expected 'tape <Y/N word>'");
            f.tape = t[1] == "-" ? Bits{} : yn_to_bits(t[1]);
        } else if (t[0] == "phi") {
            if (t.size() != 2) bad(l, "expected 'phi <size>'");
            f.phiSize = static_cast<std::uint32_t>(parse_count(l, t[1]));
        } else {
            if (t.size() != 1) bad(l, "expected one appendant per line");
            if (t[0].find_first_not_of("YN-") != std::string::npos) bad(l, "appendant must be a Y/N word or '-'");
            f.sys.appendants.push_back(t[0] == "-" ? Bits{} : yn_to_bits(t[0]));
        }
    }
    f.sys.validate();
    return f;
}

std::string format_cts(const CtsFile& f) {
    std::ostringstream os;
    os << "forge-cts 1\n";
    if (f.phiSize) os << "phi " << f.phiSize << '\n';
    os << "tape " << (f.tape.empty() ? std::string("-") : bits_to_yn(f.tape)) << '\n';
    for (const auto& a : f.sys.appendants) os << (a.empty() ? std::string("-") : bits_to_yn(a)) << '\n';
    return os.str();
}

// ---- Rule 110 states -------------------------------------------------------

std::string rle_bits(const r110::Row& r) {
    std::string out;
    for (std::size_t i = 0; i < r.size();) {
        std::size_t j = i;
        while (j < r.size() && r[j] == r[i]) ++j;
        if (j - i > 1) out += std::to_string(j - i);
        out.push_back(r[i] ? 'o' : 'b');
        i = j;
    }
    out.push_back('!');
    return out;
}

r110::Row unrle_bits(const std::string& s) {
    r110::Row r;
    std::uint64_t n = 0;
    bool haveN = false;
    for (char c : s) {
        if (c >= '0' && c <= '9') {
            n = n * 10 + static_cast<std::uint64_t>(c - '0');
            if (n > (std::uint64_t(1) << 40)) fail(ErrorKind::TooLarge, "run length too large");
            haveN = true;
        } else if (c == 'b' || c == 'o') {
            r.insert(r.end(), haveN ? n : 1, c == 'o');
            n = 0;
            haveN = false;
        } else if (c == '!') {
            if (haveN) fail(ErrorKind::Input, "count without a cell value");
            return r;
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            fail(ErrorKind::Input, std::string("bad run-length character: ") + c);
        }
    }
    fail(ErrorKind::Input, "run-length word lacks its '!' terminator");
}

r110::Rule110State parse_state(const std::string& text) {
    auto lines = lex(text, "state");
    r110::Rule110State s;
    int have = 0;
    for (const auto& l : lines) {
        const auto& t = l.tokens;
        if (t.size() != 3) bad(l, "expected '<part> <number> <word>'");
        if (t[0] == "left") {
            s.leftPhase = parse_signed(l, t[1]);
            s.leftWord = unrle_bits(t[2]);
            have |= 1;
        } else if (t[0] == "center") {
            s.origin = parse_signed(l, t[1]);
            s.center = unrle_bits(t[2]);
            have |= 2;
        } else if (t[0] == "right") {
            s.rightPhase = parse_signed(l, t[1]);
            s.rightWord = unrle_bits(t[2]);
            have |= 4;
        } else {
            bad(l, "unknown part " + t[0]);
        }
    }
    if (have != 7) fail(ErrorKind::Input, "state needs left, center and right lines");
    s.validate();
    if (s.leftPhase < 0 || s.leftPhase >= static_cast<std::int64_t>(s.leftWord.size()) || s.rightPhase < 0 ||
        s.rightPhase >= static_cast<std::int64_t>(s.rightWord.size()))
        fail(ErrorKind::Input, "phase out of range");
    return s;
}

std::string format_state(const r110::Rule110State& s) {
    std::ostringstream os;
    os << "forge-state 1\n";
    os << "left " << s.leftPhase << ' ' << rle_bits(s.leftWord) << '\n';
    os << "center " << s.origin << ' ' << rle_bits(s.center) << '\n';
    os << "right " << s.rightPhase << ' ' << rle_bits(s.rightWord) << '\n';
    return os.str();
}

}  // namespace forge
