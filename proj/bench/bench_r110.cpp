#include <benchmark/benchmark.h>

#include <random>

#include "forge/r110.hpp"

using namespace forge;

namespace {

r110::Rule110State random_state(std::size_t cells) {
    std::mt19937 rng(5);
    auto s = r110::ether_state(cells);
    for (auto& c : s.center) c = rng() & 1;
    return s;
}

void BM_Reference(benchmark::State& st) {
    auto s = random_state(st.range(0));
    for (auto _ : st) {
        s = r110::step(s);
        benchmark::DoNotOptimize(s.center.data());
    }
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_SerialRow(benchmark::State& st) {
    std::mt19937 rng(5);
    r110::Row a(st.range(0)), b(st.range(0));
    for (auto& c : a) c = rng() & 1;
    for (auto _ : st) {
        r110::step_row_serial(a, b);
        std::swap(a, b);
        benchmark::DoNotOptimize(a.data());
    }
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_Words(benchmark::State& st) {
    std::mt19937_64 rng(5);
    std::size_t n = st.range(0) / 64;
    std::vector<std::uint64_t> a(n), b(n);
    for (auto& w : a) w = rng();
    for (auto _ : st) {
        r110::step_words(a.data(), b.data(), n, 0, 0);
        std::swap(a, b);
        benchmark::DoNotOptimize(a.data());
    }
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_Evolver(benchmark::State& st) {
    r110::Evolver ev(random_state(st.range(0)));
    for (auto _ : st) ev.step();
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_Reference)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_SerialRow)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_Words)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20)->Arg(1 << 24);
BENCHMARK(BM_Evolver)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

BENCHMARK_MAIN();
