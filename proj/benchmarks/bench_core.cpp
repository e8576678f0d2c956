// Copyright (c) 2026 The spectriv authors.
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "spectriv/dgp.hpp"
#include "spectriv/estimator.hpp"
#include "spectriv/experiments.hpp"
#include "spectriv/theory.hpp"

namespace dgp = spectriv::dgp;
namespace est = spectriv::estimator;

static void BM_SimulateSample(benchmark::State& state) {
    const auto spec = dgp::from_decay({dgp::DecayVariant::polynomial, 1.0},
                                      static_cast<int>(state.range(1)));
    const auto slope = dgp::make_slope({0.0, 2.0, 1.0}, static_cast<int>(state.range(1)));
    const auto n = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dgp::simulate_sample(spec, slope, 0.5, n, 0.5, seed++));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SimulateSample)->Args({1000, 8})->Args({8000, 8})->Args({1000, 32});

static void BM_EstimateBeta(benchmark::State& state) {
    const auto spec = dgp::from_decay({dgp::DecayVariant::polynomial, 1.0},
                                      static_cast<int>(state.range(1)));
    const auto slope = dgp::make_slope({0.0, 2.0, 1.0}, static_cast<int>(state.range(1)));
    const auto sample = dgp::simulate_sample(
        spec, slope, 0.5, static_cast<std::size_t>(state.range(0)), 0.5, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(est::estimate_beta(sample, 0.05, 0.0));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateBeta)->Args({1000, 8})->Args({8000, 8})->Args({1000, 32});

static void BM_Balance(benchmark::State& state) {
    const auto kappa = state.range(0) == 0
                           ? spectriv::theory::IndexFunction::polynomial(1.0, 2.0, 0.0)
                           : spectriv::theory::IndexFunction::logarithmic(1.0, 2.0, 0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectriv::theory::balance(1000000, kappa, 1e16));
    }
}
BENCHMARK(BM_Balance)->Arg(0)->Arg(1);

static void BM_McRiskCell(benchmark::State& state) {
    spectriv::experiments::ExperimentConfig config;
    config.support_bound = 8;
    config.n_grid = {200, 400, 800};
    config.reps = 8;
    config.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectriv::experiments::mc_risk(config));
    }
}
BENCHMARK(BM_McRiskCell)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
