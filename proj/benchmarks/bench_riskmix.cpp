#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "riskmix/cvar_minimization.hpp"
#include "riskmix/expected_shortfall.hpp"
#include "riskmix/harness.hpp"
#include "riskmix/mixture_concavity.hpp"
#include "riskmix/scenarios.hpp"

namespace {

using namespace riskmix;

DiscreteDistribution dense_distribution(std::size_t atoms) {
    std::mt19937_64 rng(atoms * 2654435761u + 1);
    std::vector<Atom> out;
    out.reserve(atoms);
    double v = -1000.0;
    for (std::size_t i = 0; i < atoms; ++i) {
        v += 0.5 + static_cast<double>(rng() % 1000) / 500.0;
        out.push_back({v, 1.0 / static_cast<double>(atoms)});
    }
    return make_discrete(std::move(out));
}

std::vector<DiscreteDistribution> bench_components(std::size_t n, std::size_t atoms) {
    std::vector<DiscreteDistribution> comps;
    comps.reserve(n);
    for (std::size_t j = 0; j < n; ++j) comps.push_back(dense_distribution(atoms + j));
    return comps;
}

Weights uniform_weights(std::size_t n) {
    std::vector<double> w(n, 1.0 / static_cast<double>(n));
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) acc += w[j];
    w[n - 1] = 1.0 - acc;
    return Weights(w);
}

void BM_EsTail(benchmark::State& state) {
    const auto d = dense_distribution(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(es_tail(d, 0.05));
        benchmark::DoNotOptimize(es_tail(d, 0.95));
    }
}
BENCHMARK(BM_EsTail)->Range(16, 1 << 14);

void BM_EsIntegral(benchmark::State& state) {
    const auto d = dense_distribution(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(es_integral(d, 0.95));
    }
}
BENCHMARK(BM_EsIntegral)->Range(16, 1 << 14);

void BM_EsMinimization(benchmark::State& state) {
    const auto d = dense_distribution(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(es_minimization(d, 0.05));
    }
}
BENCHMARK(BM_EsMinimization)->Range(16, 1 << 14);

void BM_Mix(benchmark::State& state) {
    const auto comps = bench_components(4, static_cast<std::size_t>(state.range(0)));
    const Weights beta = uniform_weights(4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mix(comps, beta));
    }
}
BENCHMARK(BM_Mix)->Range(16, 1 << 12);

void BM_Decomposition(benchmark::State& state) {
    const auto comps = bench_components(4, static_cast<std::size_t>(state.range(0)));
    const Weights beta = uniform_weights(4);
    const auto mixture = mix(comps, beta);
    for (auto _ : state) {
        benchmark::DoNotOptimize(es_mixture_decomposition(mixture, comps, beta, 0.1));
    }
}
BENCHMARK(BM_Decomposition)->Range(16, 1 << 12);

void BM_ComonotoneCoupling(benchmark::State& state) {
    const auto comps = bench_components(4, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(comonotone_coupling(comps));
    }
}
BENCHMARK(BM_ComonotoneCoupling)->Range(16, 1 << 12);

void BM_ProductCoupling(benchmark::State& state) {
    const auto comps = bench_components(3, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(product_coupling(comps));
    }
}
BENCHMARK(BM_ProductCoupling)->Range(4, 64);

void BM_SuiteInstance(benchmark::State& state) {
    GenConfig config;
    config.seed = 1;
    config.instance_count = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_suite(config));
    }
}
BENCHMARK(BM_SuiteInstance)->Arg(0)->Arg(25);

}  // namespace

BENCHMARK_MAIN();
