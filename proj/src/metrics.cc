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

#include "ffsn/metrics.h"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ffsn/error.h"

namespace ffsn {
namespace {

std::vector<double> ZeroMean(std::span<const float> x) {
  double mean = 0.0;
  for (float v : x) mean += v;
  mean /= static_cast<double>(x.size());
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - mean;
  return out;
}

}  // namespace

double SiSdr(std::span<const float> reference, std::span<const float> estimate) {
  if (reference.size() != estimate.size()) {
    Fail(ErrorKind::kUsage, "length mismatch: " +
                                std::to_string(reference.size()) + " vs " +
                                std::to_string(estimate.size()));
  }
  if (reference.empty()) {
    Fail(ErrorKind::kUndefinedMetric, "SI-SDR of empty signals");
  }
  const std::vector<double> ref = ZeroMean(reference);
  const std::vector<double> est = ZeroMean(estimate);
  double ref_energy = 0.0, dot = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    ref_energy += ref[i] * ref[i];
    dot += ref[i] * est[i];
  }
  if (ref_energy == 0.0) {
    Fail(ErrorKind::kUndefinedMetric, "reference has zero energy");
  }
  const double scale = dot / ref_energy;
  double target = 0.0, error = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double t = scale * ref[i];
    const double e = est[i] - t;
    target += t * t;
    error += e * e;
  }
  // Rounding leaves a residue of order eps * target for exact copies.
  if (error <= 1e-24 * target || error == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  if (target == 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(target / error);
}

}  // namespace ffsn
