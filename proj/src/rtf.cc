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

#include "ffsn/rtf.h"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <span>

#include "ffsn/dsp.h"
#include "ffsn/error.h"
#include "ffsn/streaming.h"

namespace ffsn {
namespace {

class ThreadLimit {
 public:
  explicit ThreadLimit(int n) : saved_(omp_get_max_threads()) {
    omp_set_num_threads(n);
  }
  ~ThreadLimit() { omp_set_num_threads(saved_); }

 private:
  int saved_;
};

}  // namespace

RtfReport MeasureRtf(std::shared_ptr<const ModelWeights> weights,
                     const ModelConfig& config, const RtfOptions& options) {
  if (!(options.duration > 0.0) || options.repeats < 1 || options.chunk < 1) {
    Fail(ErrorKind::kUsage, "duration, repeats and chunk must be positive");
  }
  const auto n = static_cast<std::size_t>(std::llround(options.duration * kSampleRate));
  std::vector<float> noise(std::max<std::size_t>(n, 1));
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<float> dist(-0.5f, 0.5f);
  for (float& s : noise) s = dist(rng);

  ThreadLimit single(1);
  RtfReport report;
  report.audio_duration = static_cast<double>(noise.size()) / kSampleRate;
  report.config = "m=" + config.factor.ToString();
  const auto chunk = static_cast<std::size_t>(options.chunk);
  for (int r = 0; r < options.repeats; ++r) {
    StreamingEnhancer engine(weights, config);
    const auto start = std::chrono::steady_clock::now();
    std::span<const float> rest(noise);
    while (!rest.empty()) {
      const std::size_t take = std::min(chunk, rest.size());
      engine.Push(rest.first(take));
      rest = rest.subspan(take);
    }
    engine.Flush();
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    report.run_times.push_back(elapsed.count());
  }
  std::vector<double> sorted = report.run_times;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  report.processing_time = sorted.size() % 2
                               ? sorted[mid]
                               : 0.5 * (sorted[mid - 1] + sorted[mid]);
  report.rtf = report.processing_time / report.audio_duration;
  return report;
}

}  // namespace ffsn
