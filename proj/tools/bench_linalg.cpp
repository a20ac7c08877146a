// Benchmark of the F_p kernels: OpenMP row-parallel variants against the
// serial reference on sizes where the parallel path engages.

#include "frobmor/fp_kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace frobmor;

namespace {

kernels::Grid random_grid(int rows, int cols, u32 p, std::uint64_t seed) {
    kernels::Grid g{rows, cols, {}};
    g.a.resize((std::size_t)rows * cols);
    std::mt19937_64 rng(seed);
    for (auto& v : g.a) v = (u32)(rng() % p);
    return g;
}

constexpr u32 kPrime = 65521;

void BM_mul_serial(benchmark::State& state) {
    int n = (int)state.range(0);
    auto a = random_grid(n, n, kPrime, 1);
    auto b = random_grid(n, n, kPrime, 2);
    kernels::Grid c;
    for (auto _ : state) {
        kernels::ref::mul(a, b, c, kPrime);
        benchmark::DoNotOptimize(c.a.data());
    }
}

void BM_mul_omp(benchmark::State& state) {
    int n = (int)state.range(0);
    auto a = random_grid(n, n, kPrime, 1);
    auto b = random_grid(n, n, kPrime, 2);
    kernels::Grid c;
    for (auto _ : state) {
        kernels::mul(a, b, c, kPrime);
        benchmark::DoNotOptimize(c.a.data());
    }
}

void BM_rref_serial(benchmark::State& state) {
    int n = (int)state.range(0);
    auto a = random_grid(n, 2 * n, kPrime, 3);
    for (auto _ : state) {
        kernels::Grid m = a;
        auto piv = kernels::ref::rref(m, kPrime);
        benchmark::DoNotOptimize(piv.data());
    }
}

void BM_rref_omp(benchmark::State& state) {
    int n = (int)state.range(0);
    auto a = random_grid(n, 2 * n, kPrime, 3);
    for (auto _ : state) {
        kernels::Grid m = a;
        auto piv = kernels::rref(m, kPrime);
        benchmark::DoNotOptimize(piv.data());
    }
}

} // namespace

BENCHMARK(BM_mul_serial)->Arg(64)->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(BM_mul_omp)->Arg(64)->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(BM_rref_serial)->Arg(64)->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(BM_rref_omp)->Arg(64)->Arg(128)->Arg(256)->Arg(512);

BENCHMARK_MAIN();
