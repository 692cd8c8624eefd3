// Serial reference kernels against their OpenMP counterparts.
#include "sampspec/experiments.hpp"
#include "sampspec/kernels.hpp"
#include "sampspec/pointset.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

namespace {

using namespace sampspec;

PointSet points(int dim, std::size_t n) {
    SeededRng rng(42);
    return generate_random(dim, n, rng);
}

void BM_PsdLatticeSerial(benchmark::State& state) {
    const auto ps = points(2, static_cast<std::size_t>(state.range(0)));
    const auto lattice = kernels::make_lattice(2, 32);
    std::vector<double> out(lattice.size());
    for (auto _ : state) {
        kernels::psd_lattice_serial(ps, lattice, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_PsdLatticeOmp(benchmark::State& state) {
    const auto ps = points(2, static_cast<std::size_t>(state.range(0)));
    const auto lattice = kernels::make_lattice(2, 32);
    std::vector<double> out(lattice.size());
    for (auto _ : state) {
        kernels::psd_lattice_omp(ps, lattice, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_PairDistancesSerial(benchmark::State& state) {
    const auto ps = points(2, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::pair_distances_serial(ps));
    }
}

void BM_PairDistancesOmp(benchmark::State& state) {
    const auto ps = points(2, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::pair_distances_omp(ps));
    }
}

// one Monte Carlo realization per index, as in the spectral identity check
void realizations(benchmark::State& state, bool parallel) {
    const auto loss = TestLoss::cosine({1});
    SamplerSpec spec;
    spec.dim = 1;
    spec.n = 100;
    const auto count = static_cast<std::size_t>(state.range(0));
    std::vector<double> sq(count);
    auto task = [&](std::size_t i) {
        const double d = loss.empirical_mean(spec.draw(i)) - loss.population_mean();
        sq[i] = d * d;
    };
    for (auto _ : state) {
        if (parallel) {
            kernels::for_each_index_omp(count, task);
        } else {
            kernels::for_each_index_serial(count, task);
        }
        benchmark::DoNotOptimize(sq.data());
    }
}

void BM_RealizationsSerial(benchmark::State& state) { realizations(state, false); }
void BM_RealizationsOmp(benchmark::State& state) { realizations(state, true); }

}  // namespace

BENCHMARK(BM_PsdLatticeSerial)->Arg(256)->Arg(1024);
BENCHMARK(BM_PsdLatticeOmp)->Arg(256)->Arg(1024);
BENCHMARK(BM_PairDistancesSerial)->Arg(1024)->Arg(4096);
BENCHMARK(BM_PairDistancesOmp)->Arg(1024)->Arg(4096);
BENCHMARK(BM_RealizationsSerial)->Arg(1000);
BENCHMARK(BM_RealizationsOmp)->Arg(1000);

BENCHMARK_MAIN();
