#include "forge/r110.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "forge/error.hpp"

namespace forge::r110 {

const char* const kSpatialSignature = "01101001101000";
const char* const kTemporalSignature = "110101010111111";

namespace {

std::int64_t pmod(std::int64_t a, std::int64_t m) {
    auto r = a % m;
    return r < 0 ? r + m : r;
}

Row cyclic_step(const Row& w) {
    const auto n = w.size();
    Row out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = local_rule(w[(i + n - 1) % n], w[i], w[(i + 1) % n]);
    return out;
}

// Booth's least rotation: returns k such that w rotated left by k is minimal.
std::size_t least_rotation(const Row& w) {
    const auto n = w.size();
    std::vector<std::int64_t> f(2 * n, -1);
    std::size_t k = 0;
    for (std::size_t j = 1; j < 2 * n; ++j) {
        auto sj = w[j % n];
        auto i = f[j - k - 1];
        while (i != -1 && sj != w[(k + i + 1) % n]) {
            if (sj < w[(k + i + 1) % n]) k = j - i - 1;
            i = f[i];
        }
        if (sj != w[(k + i + 1) % n]) {
            if (sj < w[k % n]) k = j;
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    return k % n;
}

std::uint64_t pattern_bits(const char* p, std::size_t& len) {
    len = std::char_traits<char>::length(p);
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < len; ++k)
        if (p[k] == '1') v |= std::uint64_t(1) << k;
    return v;
}

}  // namespace

Row row_from_string(const std::string& s) {
    Row r;
    r.reserve(s.size());
    for (char c : s) {
        if (c == '0' || c == '.')
            r.push_back(0);
        else if (c == '1' || c == '#')
            r.push_back(1);
        else if (!std::isspace(static_cast<unsigned char>(c)))
            fail(ErrorKind::Input, std::string("not a cell value: ") + c);
    }
    return r;
}

std::string row_to_string(const Row& r) {
    std::string s;
    s.reserve(r.size());
    for (auto c : r) s.push_back(c ? '1' : '0');
    return s;
}

const Row& ether_word() {
    static const Row e = row_from_string("11111000100110");
    return e;
}

std::uint8_t Rule110State::cell(std::int64_t x) const {
    if (x < origin) {
        auto p = static_cast<std::int64_t>(leftWord.size());
        return leftWord[pmod(leftPhase - (origin - 1 - x), p)];
    }
    if (x >= end()) {
        auto p = static_cast<std::int64_t>(rightWord.size());
        return rightWord[pmod(rightPhase + (x - end()), p)];
    }
    return center[x - origin];
}

Row Rule110State::window(std::int64_t x0, std::int64_t x1) const {
    Row r;
    r.reserve(x1 > x0 ? x1 - x0 : 0);
    for (auto x = x0; x < x1; ++x) r.push_back(cell(x));
    return r;
}

void Rule110State::validate() const {
    if (leftWord.empty() || rightWord.empty()) fail(ErrorKind::Input, "periodic side words must be non-empty");
    auto bits = [](const Row& r) {
        for (auto c : r)
            if (c > 1) fail(ErrorKind::Input, "cell values must be 0 or 1");
    };
    bits(leftWord);
    bits(center);
    bits(rightWord);
}

Rule110State ether_state(std::size_t centerCells, std::int64_t shift) {
    const auto& e = ether_word();
    Rule110State s;
    s.leftWord = e;
    s.rightWord = e;
    s.origin = 0;
    for (std::size_t i = 0; i < centerCells; ++i) s.center.push_back(e[pmod(std::int64_t(i) + shift, 14)]);
    s.leftPhase = pmod(shift - 1, 14);
    s.rightPhase = pmod(std::int64_t(centerCells) + shift, 14);
    return s;
}

Rule110State step(const Rule110State& s) {
    Rule110State n;
    n.leftWord = cyclic_step(s.leftWord);
    n.rightWord = cyclic_step(s.rightWord);
    n.leftPhase = pmod(s.leftPhase - 1, static_cast<std::int64_t>(s.leftWord.size()));
    n.rightPhase = pmod(s.rightPhase + 1, static_cast<std::int64_t>(s.rightWord.size()));
    n.origin = s.origin - 1;
    Row in = s.window(s.origin - 2, s.end() + 2);
    Row out(in.size());
    step_row_serial(in, out);
    n.center.assign(out.begin() + 1, out.end() - 1);
    return n;
}

void step_row_serial(const Row& in, Row& out) {
    const auto n = in.size();
    out.resize(n);
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = local_rule(in[i - 1], in[i], in[i + 1]);
}

void step_words(const std::uint64_t* in, std::uint64_t* out, std::size_t n, std::uint64_t leftWord,
                std::uint64_t rightWord) {
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) if (count > 8192)
    for (std::int64_t i = 0; i < count; ++i) {
        const std::uint64_t prev = i > 0 ? in[i - 1] : leftWord;
        const std::uint64_t next = i + 1 < count ? in[i + 1] : rightWord;
        const std::uint64_t c = in[i];
        const std::uint64_t l = (c << 1) | (prev >> 63);
        const std::uint64_t r = (c >> 1) | (next << 63);
        out[i] = (c | r) & ~(l & c & r);
    }
}

// ---- Evolver ---------------------------------------------------------------

struct Evolver::Word {
    Row bits;
    const Word* next = nullptr;
    std::int64_t nextShift = 0;
};

namespace {
constexpr std::int64_t kMargin = 16;
constexpr std::size_t kHistory = 15;
}  // namespace

std::uint8_t Evolver::Side::at(std::int64_t x) const {
    auto p = static_cast<std::int64_t>(word->bits.size());
    return word->bits[pmod(x - anchor, p)];
}

Evolver::Evolver(const Rule110State& s) : Evolver(s, Options{}) {}

Evolver::Evolver(const Rule110State& s, Options opt) : opt_(opt) {
    s.validate();
    std::int64_t rot = 0;
    left_.word = intern(s.leftWord, rot);
    left_.anchor = s.origin - 1 - s.leftPhase + rot;
    right_.word = intern(s.rightWord, rot);
    right_.anchor = s.end() - s.rightPhase + rot;
    lo_ = s.origin;
    hi_ = s.end();
    base_ = pmod(lo_, 64) == 0 ? lo_ - 64 : lo_ - pmod(lo_, 64) - 64;
    auto words = static_cast<std::size_t>((hi_ + 64 - base_) / 64 + 1);
    buf_.assign(words, 0);
    for (auto x = lo_; x < hi_; ++x) set_bit(x, s.center[x - lo_]);
    ensure_margins();
    fill_margins();
    if (opt_.temporal) history_.push_back({base_, buf_});
}

Evolver::~Evolver() = default;

const Evolver::Word* Evolver::intern(const Row& bits, std::int64_t& rotation) {
    auto k = least_rotation(bits);
    Row canon(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) canon[i] = bits[(i + k) % bits.size()];
    rotation = static_cast<std::int64_t>(k);
    std::string key(canon.begin(), canon.end());
    auto it = registry_.find(key);
    if (it != registry_.end()) return it->second.get();
    auto w = std::make_unique<Word>();
    w->bits = std::move(canon);
    auto* raw = w.get();
    registry_.emplace(std::move(key), std::move(w));
    return raw;
}

const Evolver::Word* Evolver::successor(const Word* w) {
    if (!w->next) {
        std::int64_t rot = 0;
        auto* n = intern(cyclic_step(w->bits), rot);
        auto* mw = const_cast<Word*>(w);
        mw->next = n;
        mw->nextShift = rot;
    }
    return w->next;
}

std::size_t Evolver::cached_side_words() const { return registry_.size(); }

void Evolver::set_bit(std::int64_t x, std::uint8_t v) {
    auto off = x - base_;
    auto& word = buf_[off >> 6];
    auto mask = std::uint64_t(1) << (off & 63);
    if (v)
        word |= mask;
    else
        word &= ~mask;
}

std::uint8_t Evolver::buffer_bit(std::int64_t x) const {
    auto off = x - base_;
    return static_cast<std::uint8_t>((buf_[off >> 6] >> (off & 63)) & 1);
}

void Evolver::ensure_margins() {
    while (lo_ - base_ < kMargin) {
        buf_.insert(buf_.begin(), 0);
        base_ -= 64;
    }
    while (base_ + 64 * static_cast<std::int64_t>(buf_.size()) - hi_ < kMargin) buf_.push_back(0);
}

void Evolver::fill_margins() {
    for (auto x = base_; x < lo_; ++x) set_bit(x, left_.at(x));
    const auto top = base_ + 64 * static_cast<std::int64_t>(buf_.size());
    for (auto x = hi_; x < top; ++x) set_bit(x, right_.at(x));
}

void Evolver::step() {
    ensure_margins();
    fill_margins();
    const auto top = base_ + 64 * static_cast<std::int64_t>(buf_.size());
    std::uint64_t lw = std::uint64_t(left_.at(base_ - 1)) << 63;
    std::uint64_t rw = right_.at(top);
    tmp_.resize(buf_.size());
    step_words(buf_.data(), tmp_.data(), buf_.size(), lw, rw);
    buf_.swap(tmp_);

    auto* ln = successor(left_.word);
    left_.anchor += left_.word->nextShift;
    left_.word = ln;
    auto* rn = successor(right_.word);
    right_.anchor += right_.word->nextShift;
    right_.word = rn;

    --lo_;
    ++hi_;
    ++t_;
    if (opt_.renormalizeEvery && t_ % opt_.renormalizeEvery == 0) renormalize();
    if (opt_.temporal) {
        history_.push_back({base_, buf_});
        if (history_.size() > kHistory) history_.erase(history_.begin());
    }
}

void Evolver::renormalize() {
    const auto pl = static_cast<std::int64_t>(left_.word->bits.size());
    const auto pr = static_cast<std::int64_t>(right_.word->bits.size());
    std::int64_t m = 0;
    while (lo_ + m < hi_ && buffer_bit(lo_ + m) == left_.at(lo_ + m)) ++m;
    if (m >= std::min<std::int64_t>(pl, 64)) lo_ += m;
    m = 0;
    while (hi_ - 1 - m >= lo_ && buffer_bit(hi_ - 1 - m) == right_.at(hi_ - 1 - m)) ++m;
    if (m >= std::min<std::int64_t>(pr, 64)) hi_ -= m;
    if (hi_ < lo_) hi_ = lo_;
    trim_buffer();
}

void Evolver::trim_buffer() {
    std::size_t front = 0;
    while ((lo_ - (base_ + 64 * static_cast<std::int64_t>(front))) >= kMargin + 64) ++front;
    if (front) {
        buf_.erase(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(front));
        base_ += 64 * static_cast<std::int64_t>(front);
    }
    while (buf_.size() > 1 && base_ + 64 * static_cast<std::int64_t>(buf_.size() - 1) - hi_ >= kMargin + 64)
        buf_.pop_back();
}

std::uint8_t Evolver::cell(std::int64_t x) const {
    if (x < lo_) return left_.at(x);
    if (x >= hi_) return right_.at(x);
    return buffer_bit(x);
}

Row Evolver::window(std::int64_t x0, std::int64_t x1) const {
    Row r;
    r.reserve(x1 > x0 ? x1 - x0 : 0);
    for (auto x = x0; x < x1; ++x) r.push_back(cell(x));
    return r;
}

Rule110State Evolver::state() const {
    Rule110State s;
    s.origin = lo_;
    s.center = window(lo_, hi_);
    s.leftWord = left_.word->bits;
    s.rightWord = right_.word->bits;
    s.leftPhase = pmod(lo_ - 1 - left_.anchor, static_cast<std::int64_t>(s.leftWord.size()));
    s.rightPhase = pmod(hi_ - right_.anchor, static_cast<std::int64_t>(s.rightWord.size()));
    return s;
}

std::optional<std::int64_t> Evolver::find_spatial() const {
    std::size_t len = 0;
    const auto pat = pattern_bits(kSpatialSignature, len);
    const auto n = buf_.size();
    const auto top = base_ + 64 * static_cast<std::int64_t>(n);
    std::uint64_t tail = 0;
    for (std::int64_t k = 0; k < 64; ++k) tail |= std::uint64_t(right_.at(top + k)) << k;
    for (std::size_t w = 0; w < n; ++w) {
        const std::uint64_t cur = buf_[w];
        const std::uint64_t nxt = w + 1 < n ? buf_[w + 1] : tail;
        std::uint64_t match = ~std::uint64_t(0);
        for (std::size_t k = 0; k < len && match; ++k) {
            std::uint64_t sh = k == 0 ? cur : (cur >> k) | (nxt << (64 - k));
            match &= ((pat >> k) & 1) ? sh : ~sh;
        }
        if (match) return base_ + 64 * static_cast<std::int64_t>(w) + std::countr_zero(match);
    }
    return std::nullopt;
}

std::optional<std::int64_t> Evolver::find_temporal() const {
    if (history_.size() < kHistory) return std::nullopt;
    std::size_t len = 0;
    const auto pat = pattern_bits(kTemporalSignature, len);
    for (std::size_t w = 0; w < buf_.size(); ++w) {
        const auto absWord = (base_ >> 6) + static_cast<std::int64_t>(w);
        std::uint64_t match = ~std::uint64_t(0);
        for (std::size_t k = 0; k < len && match; ++k) {
            const auto& past = history_[k];
            const auto idx = absWord - (past.base >> 6);
            if (idx < 0 || idx >= static_cast<std::int64_t>(past.words.size())) {
                match = 0;
                break;
            }
            const std::uint64_t v = past.words[idx];
            match &= ((pat >> k) & 1) ? v : ~v;
        }
        if (match) return base_ + 64 * static_cast<std::int64_t>(w) + std::countr_zero(match);
    }
    return std::nullopt;
}

HaltReport run_until_halt(const Rule110State& s, std::uint64_t maxSteps, bool temporal) {
    Evolver::Options opt;
    opt.temporal = temporal;
    Evolver ev(s, opt);
    HaltReport rep;
    rep.temporalEnabled = temporal;
    // once one detector fires, give the other this many steps to follow
    constexpr std::uint64_t kGrace = 2000;
    std::uint64_t firstHit = 0;
    bool any = false;
    for (std::uint64_t t = 0;; ++t) {
        if (!rep.halted) {
            if (auto x = ev.find_spatial()) {
                rep.halted = true;
                rep.step = ev.time();
                rep.position = *x;
            }
        }
        if (temporal && !rep.temporalHalted) {
            if (auto x = ev.find_temporal()) {
                rep.temporalHalted = true;
                rep.temporalStep = ev.time();
                rep.temporalPosition = *x;
            }
        }
        if (!any && (rep.halted || rep.temporalHalted)) {
            any = true;
            firstHit = ev.time();
        }
        if (rep.halted && (!temporal || rep.temporalHalted)) break;
        if (any && ev.time() >= firstHit + kGrace) break;
        if (t >= maxSteps) break;
        ev.step();
    }
    rep.stepsRun = ev.time();
    return rep;
}

SpaceTimeWindow record(const Rule110State& s, std::int64_t x0, std::int64_t x1, std::uint64_t steps) {
    SpaceTimeWindow w;
    w.origin = x0;
    Evolver ev(s);
    w.rows.push_back(ev.window(x0, x1));
    for (std::uint64_t t = 0; t < steps; ++t) {
        ev.step();
        w.rows.push_back(ev.window(x0, x1));
    }
    return w;
}

Format parse_format(const std::string& name) {
    if (name == "p1" || name == "P1" || name == "pbm") return Format::P1;
    if (name == "p4" || name == "P4") return Format::P4;
    if (name == "ascii" || name == "txt") return Format::Ascii;
    fail(ErrorKind::Input, "unsupported render format: " + name);
}

std::string render(const SpaceTimeWindow& w, Format f) {
    const std::size_t width = w.rows.empty() ? 0 : w.rows.front().size();
    for (const auto& r : w.rows)
        if (r.size() != width) fail(ErrorKind::Input, "ragged space-time window");
    std::ostringstream os;
    switch (f) {
    case Format::P1:
        os << "P1\n" << width << ' ' << w.rows.size() << '\n';
        for (const auto& r : w.rows) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                os << (r[i] ? '1' : '0');
                if ((i + 1) % 70 == 0 && i + 1 < r.size()) os << '\n';
            }
            os << '\n';
        }
        break;
    case Format::P4: {
        os << "P4\n" << width << ' ' << w.rows.size() << '\n';
        for (const auto& r : w.rows) {
            std::string bytes((width + 7) / 8, '\0');
            for (std::size_t i = 0; i < r.size(); ++i)
                if (r[i]) bytes[i / 8] = static_cast<char>(bytes[i / 8] | (0x80 >> (i % 8)));
            os << bytes;
        }
        break;
    }
    case Format::Ascii:
        for (const auto& r : w.rows) {
            for (auto c : r) os << (c ? '#' : '.');
            os << '\n';
        }
        break;
    }
    return os.str();
}

SpaceTimeWindow parse_p1(const std::string& text) {
    std::istringstream is(text);
    std::string magic;
    is >> magic;
    if (magic != "P1") fail(ErrorKind::Input, "not a plain PBM file");
    auto skip_comments = [&] {
        while (is >> std::ws && is.peek() == '#') {
            std::string line;
            std::getline(is, line);
        }
    };
    skip_comments();
    std::size_t width = 0, height = 0;
    is >> width;
    skip_comments();
    is >> height;
    if (!is) fail(ErrorKind::Input, "bad PBM header");
    SpaceTimeWindow w;
    for (std::size_t y = 0; y < height; ++y) {
        Row r;
        while (r.size() < width) {
            skip_comments();
            char c = 0;
            if (!(is >> c)) fail(ErrorKind::Input, "truncated PBM raster");
            if (c != '0' && c != '1') fail(ErrorKind::Input, "bad PBM pixel");
            r.push_back(c == '1');
        }
        w.rows.push_back(std::move(r));
    }
    return w;
}

}  // namespace forge::r110
