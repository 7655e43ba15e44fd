#include <benchmark/benchmark.h>

#include "vqkz/circuit.hpp"
#include "vqkz/encoding.hpp"
#include "vqkz/experiments.hpp"
#include "vqkz/gso.hpp"
#include "vqkz/lll.hpp"
#include "vqkz/reduction.hpp"
#include "vqkz/statevector.hpp"

namespace {

vqkz::Basis random_basis(int rank, std::uint64_t seed) {
    return vqkz::gen_random_lattice(rank, 50, seed);
}

void bm_gate_layer(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    vqkz::StateVector sv(n);
    for (auto _ : state) {
        for (int q = 0; q < n; ++q) sv.apply_rx(q, 0.3);
        for (int q = 0; q + 1 < n; ++q) sv.apply_crz(q, q + 1, 0.7);
        benchmark::DoNotOptimize(sv);
    }
}
BENCHMARK(bm_gate_layer)->Arg(8)->Arg(12)->Arg(16);

void bm_gram_schmidt(benchmark::State& state) {
    const vqkz::Basis b = random_basis(static_cast<int>(state.range(0)), 11);
    for (auto _ : state) {
        auto gso = vqkz::gram_schmidt(b);
        benchmark::DoNotOptimize(gso);
    }
}
BENCHMARK(bm_gram_schmidt)->Arg(10)->Arg(20)->Arg(40);

void bm_lll(benchmark::State& state) {
    const vqkz::Basis b = random_basis(static_cast<int>(state.range(0)), 17);
    for (auto _ : state) {
        auto reduced = vqkz::lll_reduce(b, 0.75);
        benchmark::DoNotOptimize(reduced);
    }
}
BENCHMARK(bm_lll)->Arg(8)->Arg(12)->Arg(16);

void bm_enumerate(benchmark::State& state) {
    const vqkz::Basis b = vqkz::lll_reduce(random_basis(static_cast<int>(state.range(0)), 23), 0.75);
    for (auto _ : state) {
        auto sv = vqkz::enumerate_shortest(b);
        benchmark::DoNotOptimize(sv);
    }
}
BENCHMARK(bm_enumerate)->Arg(4)->Arg(6)->Arg(8);

void bm_ansatz_run(benchmark::State& state) {
    const vqkz::Basis b = vqkz::lll_reduce(random_basis(3, 29), 0.75);
    const auto layout = vqkz::QubitLayout::fixed(3, 2);
    const auto h = vqkz::DiagonalHamiltonian::from_block(b, layout);
    const vqkz::Circuit c = vqkz::build_svp_ansatz(h, static_cast<int>(state.range(0)));
    const std::vector<double> theta(c.params, 0.05);
    for (auto _ : state) {
        auto sv = vqkz::run(c, theta);
        benchmark::DoNotOptimize(sv);
    }
}
BENCHMARK(bm_ansatz_run)->Arg(2)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
