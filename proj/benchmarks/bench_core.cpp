/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include <benchmark/benchmark.h>

#include "chanent/entropies.hpp"
#include "chanent/random.hpp"
#include "chanent/serialization.hpp"

using namespace chanent;

static void BM_PartialTrace(benchmark::State& state) {
    rng::Engine eng(1);
    Matrix rho = rng::random_state(eng, 64);
    for (auto _ : state) {
        benchmark::DoNotOptimize(partial_trace(rho, {4, 4, 4}, {0, 2}));
    }
}
BENCHMARK(BM_PartialTrace);

static void BM_Eigh64(benchmark::State& state) {
    rng::Engine eng(2);
    Matrix rho = rng::random_state(eng, 64);
    for (auto _ : state) {
        SpectralDecomposition sd = eigh(rho);
        benchmark::DoNotOptimize(sd.eigenvalues);
    }
}
BENCHMARK(BM_Eigh64);

static void BM_ChoiOfRandomChannel(benchmark::State& state) {
    rng::Engine eng(3);
    SystemDims dims{{{"A", 2, 2}, {"B", 2, 2}}};
    for (auto _ : state) {
        Channel c = rng::random_channel(eng, dims);
        benchmark::DoNotOptimize(c.choi().matrix.trace());
    }
}
BENCHMARK(BM_ChoiOfRandomChannel);

static void BM_CondVnSwapMixture(benchmark::State& state) {
    Channel c = builders::white_noise_mixture(builders::swap_gate(2), 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cond_vn_telecov(c).value);
    }
}
BENCHMARK(BM_CondVnSwapMixture);

static void BM_CondMinSdpQubit(benchmark::State& state) {
    Channel c = builders::white_noise_mixture(builders::swap_gate(2), 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cond_min_sdp(c).value);
    }
}
BENCHMARK(BM_CondMinSdpQubit);

BENCHMARK_MAIN();
