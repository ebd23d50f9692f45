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

#ifndef FFSN_MEL_FILTERBANK_H_
#define FFSN_MEL_FILTERBANK_H_

#include <span>
#include <vector>

namespace ffsn {

// HTK mel scale.
double HzToMel(double hz);
double MelToHz(double mel);

// Linear-frequency magnitude -> mel magnitude projection, num_mel x num_bins.
class MelFilterbank {
 public:
  MelFilterbank() = default;

  // Peak-1 triangular filters with corners at num_mel + 2 points equally
  // spaced on the mel axis, evaluated at bin centers k * sample_rate /
  // (2 * (num_bins - 1)).
  static MelFilterbank Build(int num_bins = 257, int num_mel = 64,
                             int sample_rate = 16000, double f_min = 0.0,
                             double f_max = 8000.0);

  // Wraps a matrix loaded from disk. Throws kValidation on negative or
  // non-finite entries, or when a row has no positive entry.
  static MelFilterbank FromMatrix(int num_mel, int num_bins,
                                  std::vector<float> weights);

  int num_mel() const { return num_mel_; }
  int num_bins() const { return num_bins_; }
  const std::vector<float>& weights() const { return weights_; }
  float weight(int row, int bin) const {
    return weights_[static_cast<std::size_t>(row) * num_bins_ + bin];
  }

  // out = W * magnitude. Throws kShape on length mismatch and kData on a
  // negative input.
  void Apply(std::span<const float> magnitude, std::span<float> out) const;
  std::vector<float> Apply(std::span<const float> magnitude) const;

 private:
  int num_mel_ = 0;
  int num_bins_ = 0;
  std::vector<float> weights_;
};

}  // namespace ffsn

#endif  // FFSN_MEL_FILTERBANK_H_
