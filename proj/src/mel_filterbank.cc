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

#include "ffsn/mel_filterbank.h"

#include <cmath>
#include <string>

#include "ffsn/error.h"

namespace ffsn {

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

MelFilterbank MelFilterbank::Build(int num_bins, int num_mel, int sample_rate,
                                   double f_min, double f_max) {
  if (num_mel < 2 || num_bins < 2 || sample_rate <= 0) {
    Fail(ErrorKind::kConfiguration, "mel filterbank needs >= 2 rows and bins");
  }
  if (!(f_min >= 0.0 && f_min < f_max && f_max <= sample_rate / 2.0)) {
    Fail(ErrorKind::kConfiguration,
         "mel filterbank range must satisfy 0 <= f_min < f_max <= sr/2");
  }
  const double mel_lo = HzToMel(f_min);
  const double mel_hi = HzToMel(f_max);
  std::vector<double> corners(num_mel + 2);
  for (int i = 0; i < num_mel + 2; ++i) {
    corners[i] = MelToHz(mel_lo + (mel_hi - mel_lo) * i / (num_mel + 1));
  }
  const double bin_hz = static_cast<double>(sample_rate) / (2 * (num_bins - 1));

  MelFilterbank fb;
  fb.num_mel_ = num_mel;
  fb.num_bins_ = num_bins;
  fb.weights_.assign(static_cast<std::size_t>(num_mel) * num_bins, 0.0f);
  for (int r = 0; r < num_mel; ++r) {
    const double left = corners[r];
    const double center = corners[r + 1];
    const double right = corners[r + 2];
    bool any = false;
    for (int k = 0; k < num_bins; ++k) {
      const double f = k * bin_hz;
      double w = 0.0;
      if (f >= left && f <= center) {
        w = (f - left) / (center - left);
      } else if (f > center && f <= right) {
        w = (right - f) / (right - center);
      }
      if (w > 0.0) any = true;
      fb.weights_[static_cast<std::size_t>(r) * num_bins + k] =
          static_cast<float>(w);
    }
    if (!any) {
      Fail(ErrorKind::kConfiguration,
           "mel row " + std::to_string(r) +
               " covers no frequency bin; too many mel bands for this resolution");
    }
  }
  return fb;
}

MelFilterbank MelFilterbank::FromMatrix(int num_mel, int num_bins,
                                        std::vector<float> weights) {
  if (num_mel <= 0 || num_bins <= 0 ||
      weights.size() != static_cast<std::size_t>(num_mel) * num_bins) {
    Fail(ErrorKind::kValidation, "mel filterbank matrix has the wrong size");
  }
  for (int r = 0; r < num_mel; ++r) {
    bool any = false;
    for (int k = 0; k < num_bins; ++k) {
      const float w = weights[static_cast<std::size_t>(r) * num_bins + k];
      if (!std::isfinite(w) || w < 0.0f) {
        Fail(ErrorKind::kValidation, "mel filterbank has a negative entry");
      }
      any = any || w > 0.0f;
    }
    if (!any) {
      Fail(ErrorKind::kValidation,
           "mel filterbank row " + std::to_string(r) + " is empty");
    }
  }
  MelFilterbank fb;
  fb.num_mel_ = num_mel;
  fb.num_bins_ = num_bins;
  fb.weights_ = std::move(weights);
  return fb;
}

void MelFilterbank::Apply(std::span<const float> magnitude,
                          std::span<float> out) const {
  if (static_cast<int>(magnitude.size()) != num_bins_ ||
      static_cast<int>(out.size()) != num_mel_) {
    Fail(ErrorKind::kShape, "mel apply: length mismatch");
  }
  for (float v : magnitude) {
    if (!(v >= 0.0f)) Fail(ErrorKind::kData, "mel apply: negative magnitude");
  }
  for (int r = 0; r < num_mel_; ++r) {
    const float* row = weights_.data() + static_cast<std::size_t>(r) * num_bins_;
    float acc = 0.0f;
    for (int k = 0; k < num_bins_; ++k) acc += row[k] * magnitude[k];
    out[r] = acc;
  }
}

std::vector<float> MelFilterbank::Apply(std::span<const float> magnitude) const {
  std::vector<float> out(num_mel_);
  Apply(magnitude, out);
  return out;
}

}  // namespace ffsn
