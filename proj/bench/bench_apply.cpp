#include <random>

#include <benchmark/benchmark.h>

#include "tcforge/dynamics.hpp"

using namespace tcforge;

namespace {

Circuit make_circuit(int n, int gates)
{
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-3, 3);
    Circuit c;
    c.n = n;
    for (int i = 0; i < gates; ++i) c.then(i % 2 ? Gate::rz(u(rng)) : Gate::tc(u(rng)));
    return c;
}

void BM_ApplyParallel(benchmark::State& state)
{
    Circuit c = make_circuit(static_cast<int>(state.range(0)), 200);
    const int q_max = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(apply_circuit(c, q_max));
}

void BM_ApplySerial(benchmark::State& state)
{
    Circuit c = make_circuit(static_cast<int>(state.range(0)), 200);
    const int q_max = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(apply_circuit_serial(c, q_max));
}

void BM_TowerParallel(benchmark::State& state)
{
    Circuit c = make_circuit(static_cast<int>(state.range(0)), 200);
    c.then(Gate::rx(0.3));
    const int q_max = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(apply_circuit(c, q_max));
}

void BM_TowerSerial(benchmark::State& state)
{
    Circuit c = make_circuit(static_cast<int>(state.range(0)), 200);
    c.then(Gate::rx(0.3));
    const int q_max = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(apply_circuit_serial(c, q_max));
}

void sizes(benchmark::internal::Benchmark* b)
{
    for (int n : {2, 4, 6}) b->Args({n, 12});
    b->Args({8, 24});
    b->Unit(benchmark::kMillisecond);
}

void tower_sizes(benchmark::internal::Benchmark* b)
{
    for (int n : {2, 4, 6}) b->Args({n, 12});
    b->Unit(benchmark::kMillisecond);
}

} // namespace

BENCHMARK(BM_ApplyParallel)->Apply(sizes);
BENCHMARK(BM_ApplySerial)->Apply(sizes);
BENCHMARK(BM_TowerParallel)->Apply(tower_sizes);
BENCHMARK(BM_TowerSerial)->Apply(tower_sizes);

BENCHMARK_MAIN();
