// Copyright 2026 The ffsn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels against the OpenMP kernels on the shapes the
// model runs every frame. Use OMP_NUM_THREADS to vary the thread count.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ffsn/kernels.h"
#include "ffsn/lstm.h"

namespace {

using ffsn::LstmLayerParams;

std::vector<float> Noise(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<float> dist(-0.1f, 0.1f);
  std::vector<float> v(n);
  for (float& x : v) x = dist(rng);
  return v;
}

LstmLayerParams RandomLayer(int in, int hidden) {
  LstmLayerParams p = LstmLayerParams::Zeros(in, hidden);
  p.w_input = Noise(p.w_input.size(), 1);
  p.w_recurrent = Noise(p.w_recurrent.size(), 2);
  p.bias_input = Noise(p.bias_input.size(), 3);
  p.bias_recurrent = Noise(p.bias_recurrent.size(), 4);
  return p;
}

// Args: batch, input width, hidden width.
template <bool kSerial>
void BM_LstmCellBatch(benchmark::State& state) {
  const int batch = static_cast<int>(state.range(0));
  const int in = static_cast<int>(state.range(1));
  const int hidden = static_cast<int>(state.range(2));
  const LstmLayerParams p = RandomLayer(in, hidden);
  const std::vector<float> x = Noise(static_cast<std::size_t>(batch) * in, 5);
  std::vector<float> h(static_cast<std::size_t>(batch) * hidden, 0.0f);
  std::vector<float> c(h.size(), 0.0f);
  for (auto _ : state) {
    if constexpr (kSerial) {
      ffsn::kernels::serial::LstmCellBatch(p, x, batch, h, c);
    } else {
      ffsn::kernels::LstmCellBatch(p, x, batch, h, c);
    }
    benchmark::DoNotOptimize(h.data());
  }
  const double macs = 4.0 * batch * hidden * (in + hidden);
  state.counters["MAC/s"] = benchmark::Counter(
      macs * state.iterations(), benchmark::Counter::kIsRate);
}

template <bool kSerial>
void BM_DotGemm(benchmark::State& state) {
  const int batch = static_cast<int>(state.range(0));
  const int depth = static_cast<int>(state.range(1));
  const int rows = static_cast<int>(state.range(2));
  const std::vector<float> a = Noise(static_cast<std::size_t>(batch) * depth, 6);
  const std::vector<float> w = Noise(static_cast<std::size_t>(rows) * depth, 7);
  std::vector<float> out(static_cast<std::size_t>(batch) * rows);
  for (auto _ : state) {
    if constexpr (kSerial) {
      ffsn::kernels::serial::DotGemm(a, batch, w, rows, depth, out, false);
    } else {
      ffsn::kernels::DotGemm(a, batch, w, rows, depth, out, false);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.counters["MAC/s"] = benchmark::Counter(
      static_cast<double>(batch) * rows * depth * state.iterations(),
      benchmark::Counter::kIsRate);
}

void LstmShapes(benchmark::internal::Benchmark* b) {
  b->Args({64, 12, 384});   // sub-band layer 0, all bands
  b->Args({64, 384, 384});  // sub-band layer 1
  b->Args({1, 128, 512});   // mel-to-linear layer 0
  b->Args({1, 512, 512});
}

BENCHMARK(BM_LstmCellBatch<true>)->Name("LstmCellBatch/serial")->Apply(LstmShapes);
BENCHMARK(BM_LstmCellBatch<false>)->Name("LstmCellBatch/omp")->Apply(LstmShapes);
BENCHMARK(BM_DotGemm<true>)->Name("DotGemm/serial")->Args({64, 384, 1536})->Args({1, 512, 2048});
BENCHMARK(BM_DotGemm<false>)->Name("DotGemm/omp")->Args({64, 384, 1536})->Args({1, 512, 2048});

}  // namespace

BENCHMARK_MAIN();
