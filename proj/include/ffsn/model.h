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

#ifndef FFSN_MODEL_H_
#define FFSN_MODEL_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ffsn/lstm.h"
#include "ffsn/mel_filterbank.h"

namespace ffsn {

// Temporal down-sampling factor of the sub-band path. The infinite factor
// removes the sub-band model entirely.
class DownsampleFactor {
 public:
  static constexpr DownsampleFactor Infinite() { return DownsampleFactor(0); }
  // Throws kConfiguration for m < 1.
  static DownsampleFactor Finite(int m);
  // Accepts a positive integer or one of "inf", "+inf", "infinity".
  static DownsampleFactor Parse(std::string_view text);

  bool infinite() const { return m_ == 0; }
  // Throws kContract when infinite.
  int value() const;
  std::string ToString() const;

  friend bool operator==(DownsampleFactor, DownsampleFactor) = default;

 private:
  constexpr explicit DownsampleFactor(int m) : m_(m) {}
  int m_;
};

struct ModelConfig {
  int num_bins = 257;
  int num_mel = 64;
  int neighbors = 5;
  int look_ahead = 2;
  std::array<int, 2> l2m_hidden{384, 257};
  std::array<int, 2> sub_hidden{384, 384};
  std::array<int, 2> m2l_hidden{512, 512};
  DownsampleFactor factor = DownsampleFactor::Finite(2);
  double frame_rate = 62.5;

  bool sub_band_present() const { return !factor.infinite(); }
  int subband_width() const { return 2 * neighbors + 2; }
  int m2l_input_width() const {
    return sub_band_present() ? 2 * num_mel : num_mel;
  }
  int mask_width() const { return 2 * num_bins; }

  // Throws kConfiguration on non-positive sizes, negative look-ahead or
  // neighbors >= num_mel.
  void Validate() const;
};

// Two stacked LSTM layers followed by one affine layer.
struct RecurrentStack {
  std::array<LstmLayerParams, 2> lstm;
  AffineParams affine;

  static RecurrentStack Zeros(int input_dim, std::array<int, 2> hidden,
                              int output_dim);
  std::size_t ParameterCount() const;
  int input_dim() const { return lstm[0].input_dim; }
  int output_dim() const { return affine.output_dim; }
};

struct ModelWeights {
  MelFilterbank mel;
  RecurrentStack l2m;
  std::optional<RecurrentStack> sub;
  RecurrentStack m2l;

  // Learned parameters only; the filterbank is fixed and not counted.
  std::size_t ParameterCount() const;

  static ModelWeights Zeros(const ModelConfig& config);
  // LSTM tensors ~ U(-1/sqrt(hidden), 1/sqrt(hidden)); affine tensors ~
  // U(-1/sqrt(input), 1/sqrt(input)). Deterministic for a given seed.
  static ModelWeights Random(const ModelConfig& config, std::uint64_t seed);

  // Throws kConfiguration if any tensor shape disagrees with `config`
  // (including a sub-band model present for an infinite factor or absent
  // for a finite one).
  void CheckConsistent(const ModelConfig& config) const;
};

}  // namespace ffsn

#endif  // FFSN_MODEL_H_
