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
//
// Complex ratio mask codec. Each real component v of the mask is compressed
// to o = K * (1 - exp(-C v)) / (1 + exp(-C v)) = K * tanh(C v / 2), which
// lies in (-K, K). Masks are laid out per frame as
// [re(0), im(0), re(1), im(1), ..., re(F-1), im(F-1)].

#ifndef FFSN_CIRM_H_
#define FFSN_CIRM_H_

#include <complex>
#include <span>
#include <utility>

namespace ffsn {

inline constexpr double kCirmBound = 10.0;
inline constexpr double kCirmSteepness = 0.1;
// Compressed values are clamped to +/-(K - margin) before inversion.
inline constexpr double kCirmClampMargin = 1e-4;

double CirmCompressValue(double v);
double CirmDecompressValue(double o);

// Returns (compressed real part, compressed imaginary part).
std::pair<float, float> CirmCompress(std::complex<double> mask);

// enhanced[f] = decompress(mask[2f], mask[2f+1]) * noisy[f].
void CirmDecompressApply(std::span<const float> mask,
                         std::span<const std::complex<float>> noisy,
                         std::span<std::complex<float>> enhanced);

}  // namespace ffsn

#endif  // FFSN_CIRM_H_
