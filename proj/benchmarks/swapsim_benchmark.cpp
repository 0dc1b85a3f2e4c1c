// Copyright 2026 The swapsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <vector>

#include "benchmark/benchmark.h"
#include "swapsim/entanglement_metrics.hpp"
#include "swapsim/experiment_model.hpp"
#include "swapsim/loss_channel.hpp"
#include "swapsim/swap_protocol.hpp"

using namespace swapsim;

namespace {

const InputPair kPair = InputPair::from_ratios(0.3, 0.2);

void BM_ClosedForm(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(closed_form_rho(kPair, 0.7, 0.4, Sign::plus));
}
BENCHMARK(BM_ClosedForm);

void BM_BruteForceSwap(benchmark::State& state) {
    const BsmSetting setting = BsmSetting::x(Sign::plus);
    for (auto _ : state) benchmark::DoNotOptimize(simulate_swap(kPair, 0.7, 0.4, setting));
}
BENCHMARK(BM_BruteForceSwap);

void BM_PropagateDilation(benchmark::State& state) {
    const PureState psi = build_inputs(kPair);
    for (auto _ : state) benchmark::DoNotOptimize(propagate(psi, LossChannel(0.7), LossChannel(0.4)));
}
BENCHMARK(BM_PropagateDilation);

void BM_PropagateKraus(benchmark::State& state) {
    const PureState psi = build_inputs(kPair);
    for (auto _ : state) benchmark::DoNotOptimize(propagate_kraus(psi, LossChannel(0.7), LossChannel(0.4)));
}
BENCHMARK(BM_PropagateKraus);

void BM_PartialTrace(benchmark::State& state) {
    const PureState psi = build_inputs(kPair);
    const DensityMatrix rho = propagate(psi, LossChannel(0.7), LossChannel(0.4));
    for (auto _ : state) benchmark::DoNotOptimize(partial_trace(rho, {modes::C1, modes::C2}));
}
BENCHMARK(BM_PartialTrace);

void BM_Wootters(benchmark::State& state) {
    const DensityMatrix rho = simulate_swap(kPair, 0.7, 0.4, BsmSetting::x(Sign::plus)).rho_ab;
    for (auto _ : state) benchmark::DoNotOptimize(concurrence_wootters(rho));
}
BENCHMARK(BM_Wootters);

void BM_OptimalT2(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(optimal_t2(0.4));
}
BENCHMARK(BM_OptimalT2);

void BM_FringeFit(benchmark::State& state) {
    const std::vector<double> thetas = theta_grid(static_cast<std::size_t>(state.range(0)));
    const FringeCounts counts =
        synth_counts(kPair, 0.7, 0.4, BsmSetting::x(Sign::plus), thetas, CountModel{1e5, 1});
    for (auto _ : state) benchmark::DoNotOptimize(estimate_visibility(counts.thetas, counts.plus));
}
BENCHMARK(BM_FringeFit)->Arg(24)->Arg(96);

}  // namespace

BENCHMARK_MAIN();
