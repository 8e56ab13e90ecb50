// Copyright (c) 2026 The bookprosody Authors
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


#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "bookprosody/dsp/audio.hpp"
#include "bookprosody/dsp/intensity.hpp"
#include "bookprosody/dsp/pitch.hpp"
#include "bookprosody/eval/binomial.hpp"
#include "bookprosody/models/bilstm.hpp"

namespace bp = bookprosody;

namespace {

constexpr int kSampleRate = 16000;

bp::dsp::AudioBuffer noisy_tone(double seconds) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> noise(0.0, 0.02);
  std::vector<double> x(static_cast<std::size_t>(seconds * kSampleRate));
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = 0.5 * std::sin(2.0 * M_PI * 180.0 * static_cast<double>(i) / kSampleRate) + noise(rng);
  }
  return bp::dsp::AudioBuffer(std::move(x), kSampleRate);
}

void BM_PitchTrack(benchmark::State& state) {
  const auto audio = noisy_tone(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bp::dsp::pitch_track(audio));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PitchTrack)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_IntensityTrack(benchmark::State& state) {
  const auto audio = noisy_tone(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bp::dsp::intensity_track(audio));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IntensityTrack)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_BilstmLossGradient(benchmark::State& state) {
  const int units = static_cast<int>(state.range(0));
  const int dims = 64;
  const int batch = 32;
  const auto layout = bp::models::bilstm_layout(dims, units, 20);
  bp::models::Rng rng(3);
  const Eigen::VectorXd params = bp::models::bilstm_init(layout, units, rng);
  bp::models::SequenceBatch seq;
  for (int t = 0; t < 3; ++t) {
    seq.inputs.push_back(Eigen::MatrixXd::Random(dims, batch));
    seq.targets.push_back(Eigen::MatrixXd::Random(3, batch));
    seq.masks.push_back(Eigen::MatrixXd::Ones(3, batch));
  }
  Eigen::VectorXd grad(params.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(bp::models::bilstm_loss(layout, params, units, seq, &grad));
  }
}
BENCHMARK(BM_BilstmLossGradient)->Arg(10)->Arg(40);

void BM_BinomialUpperTail(benchmark::State& state) {
  const long n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(bp::eval::binomial_upper_tail(n / 2 + 1, n));
}
BENCHMARK(BM_BinomialUpperTail)->Arg(62)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
