// Copyright 2026 The qrcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels against the OpenMP ones. Thread count follows
// OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "qrc/bloch.hpp"
#include "qrc/dimension.hpp"
#include "qrc/fixtures.hpp"
#include "qrc/harness.hpp"
#include "qrc/reference.hpp"
#include "qrc/reservoir.hpp"
#include "qrc/rng.hpp"

namespace {

using namespace qrc;

std::vector<DensityMatrix> reservoir_states(int n, size_t count) {
    ReservoirConfig cfg;
    cfg.n_qubits = n;
    cfg.j0 = 0.4;
    std::vector<DensityMatrix> states;
    RunOptions opt;
    opt.observer = [&](const StateEvent &e) {
        if (e.substep > 0 && states.size() < count) {
            states.push_back(e.state);
        }
    };
    run_sequence(cfg, uniform_inputs(1, count / 10 + 1), opt);
    return states;
}

void BM_BlochEmbedParallel(benchmark::State &state) {
    auto states = reservoir_states(static_cast<int>(state.range(0)), 2000);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bloch_embed(states));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(states.size()));
}

void BM_BlochEmbedSerialFastKernel(benchmark::State &state) {
    auto states = reservoir_states(static_cast<int>(state.range(0)), 2000);
    for (auto _ : state) {
        auto traj = BlochTrajectory::for_qubits(static_cast<int>(state.range(0)));
        for (const auto &s : states) {
            bloch_vector(s.matrix(), traj.append(0.0));
        }
        benchmark::DoNotOptimize(traj);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(states.size()));
}

void BM_BlochEmbedReference(benchmark::State &state) {
    auto states = reservoir_states(static_cast<int>(state.range(0)), 200);
    for (auto _ : state) {
        for (const auto &s : states) {
            benchmark::DoNotOptimize(reference::bloch_vector(s.matrix()));
        }
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(states.size()));
}

PointCloud reservoir_cloud(int n) {
    ReservoirConfig cfg;
    cfg.n_qubits = n;
    cfg.j0 = 0.4;
    RunOptions opt;
    opt.record_states = true;
    opt.record_from_step = 100;
    return *run_sequence(cfg, uniform_inputs(2, 1100), opt).states;
}

void BM_CovarianceDimensionParallel(benchmark::State &state) {
    auto cloud = reservoir_cloud(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(covariance_dimension(cloud));
    }
}

void BM_CovarianceDimensionReference(benchmark::State &state) {
    auto cloud = reservoir_cloud(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::covariance_dimension(cloud));
    }
}

void BM_SweepWorkers(benchmark::State &state) {
    SweepSpec spec;
    spec.n_values = {3};
    spec.j0_values = {0.2, 0.4};
    spec.ensemble_size = 4;
    spec.task.washout = 100;
    spec.task.train = 400;
    spec.task.test = 200;
    spec.task.tau_max = 20;
    spec.negativity_steps = 50;
    spec.dimension_steps = 100;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_sweep(spec, static_cast<int>(state.range(0))));
    }
}

}  // namespace

BENCHMARK(BM_BlochEmbedParallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlochEmbedSerialFastKernel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlochEmbedReference)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CovarianceDimensionParallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CovarianceDimensionReference)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepWorkers)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
