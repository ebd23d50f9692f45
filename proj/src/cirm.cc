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

#include "ffsn/cirm.h"

#include <algorithm>
#include <cmath>

#include "ffsn/error.h"

namespace ffsn {

double CirmCompressValue(double v) {
  return kCirmBound * std::tanh(kCirmSteepness * v / 2.0);
}

double CirmDecompressValue(double o) {
  const double limit = kCirmBound - kCirmClampMargin;
  const double clamped = std::clamp(o, -limit, limit);
  return -std::log((kCirmBound - clamped) / (kCirmBound + clamped)) /
         kCirmSteepness;
}

std::pair<float, float> CirmCompress(std::complex<double> mask) {
  return {static_cast<float>(CirmCompressValue(mask.real())),
          static_cast<float>(CirmCompressValue(mask.imag()))};
}

void CirmDecompressApply(std::span<const float> mask,
                         std::span<const std::complex<float>> noisy,
                         std::span<std::complex<float>> enhanced) {
  if (mask.size() != 2 * noisy.size() || enhanced.size() != noisy.size()) {
    Fail(ErrorKind::kShape, "mask width must be twice the bin count");
  }
  for (std::size_t f = 0; f < noisy.size(); ++f) {
    const std::complex<double> m(CirmDecompressValue(mask[2 * f]),
                                 CirmDecompressValue(mask[2 * f + 1]));
    const std::complex<double> x(noisy[f].real(), noisy[f].imag());
    const std::complex<double> y = m * x;
    enhanced[f] = {static_cast<float>(y.real()), static_cast<float>(y.imag())};
  }
}

}  // namespace ffsn
