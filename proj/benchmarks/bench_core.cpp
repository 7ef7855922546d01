#include <benchmark/benchmark.h>

#include <random>

#include "rkcert/catalog.hpp"
#include "rkcert/hypocoercivity.hpp"
#include "rkcert/linalg.hpp"
#include "rkcert/rk.hpp"
#include "rkcert/verifier.hpp"

namespace {

using namespace rkcert;

ComplexMatrix random_matrix(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Complex(dist(rng), dist(rng));
    return m;
}

ComplexMatrix random_semidissipative(int n, unsigned seed) {
    const ComplexMatrix z = random_matrix(n, seed);
    const ComplexMatrix skew = (z - z.adjoint()) / 2.0;
    const ComplexMatrix b = random_matrix(n, seed + 1);
    return skew - b * b.adjoint() / static_cast<double>(n);
}

void BM_SpectralNorm(benchmark::State& state) {
    const ComplexMatrix m = random_matrix(static_cast<int>(state.range(0)), 42);
    for (auto _ : state) benchmark::DoNotOptimize(spectral_norm(m));
}
BENCHMARK(BM_SpectralNorm)->Arg(8)->Arg(32)->Arg(64);

void BM_MatrixExponential(benchmark::State& state) {
    const ComplexMatrix m = random_semidissipative(static_cast<int>(state.range(0)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(matrix_exponential(m, 0.1));
}
BENCHMARK(BM_MatrixExponential)->Arg(8)->Arg(32);

void BM_SolveLyapunov(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ComplexMatrix m =
        random_semidissipative(n, 11) - 0.5 * ComplexMatrix::Identity(n, n);
    const ComplexMatrix q = ComplexMatrix::Identity(n, n);
    for (auto _ : state) benchmark::DoNotOptimize(solve_lyapunov(m, q));
}
BENCHMARK(BM_SolveLyapunov)->Arg(8)->Arg(32);

void BM_HCIndexDefinitional(benchmark::State& state) {
    const ComplexMatrix m = levy_tadmor_matrix();
    for (auto _ : state) benchmark::DoNotOptimize(hc_index_definitional(m));
}
BENCHMARK(BM_HCIndexDefinitional);

void BM_Staircase(benchmark::State& state) {
    const ComplexMatrix m = levy_tadmor_matrix();
    const HermitianSplit split = hermitian_split(m);
    for (auto _ : state) benchmark::DoNotOptimize(staircase(split.s, split.h));
}
BENCHMARK(BM_Staircase);

void BM_NormSweep(benchmark::State& state) {
    const SchemeInfo scheme = scheme_from_catalog("rk4");
    const ComplexMatrix m = sun_shu_matrix();
    const std::vector<double> grid = default_grid(m, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(norm_sweep(scheme.poly, m, grid));
}
BENCHMARK(BM_NormSweep)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
