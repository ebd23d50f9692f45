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

#ifndef FFSN_RTF_H_
#define FFSN_RTF_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ffsn/model.h"

namespace ffsn {

struct RtfReport {
  double audio_duration = 0.0;    // seconds
  double processing_time = 0.0;   // seconds, median over runs
  double rtf = 0.0;
  std::vector<double> run_times;  // seconds, in run order
  std::string config;
};

struct RtfOptions {
  double duration = 30.0;
  int repeats = 3;
  int chunk = 256;
  std::uint64_t seed = 1;
};

// Streams uniform noise through a fresh StreamingEnhancer per run on one
// thread and reports the median wall-clock time. Throws kUsage for a
// non-positive duration, repeat count or chunk size.
RtfReport MeasureRtf(std::shared_ptr<const ModelWeights> weights,
                     const ModelConfig& config, const RtfOptions& options);

}  // namespace ffsn

#endif  // FFSN_RTF_H_
