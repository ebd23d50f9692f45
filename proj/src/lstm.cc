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

#include "ffsn/lstm.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ffsn/error.h"
#include "ffsn/kernels.h"

namespace ffsn {
namespace {

bool AllFinite(std::span<const float> v) {
  return std::all_of(v.begin(), v.end(),
                     [](float x) { return std::isfinite(x); });
}

}  // namespace

LstmLayerParams LstmLayerParams::Zeros(int input_dim, int hidden_dim) {
  LstmLayerParams p;
  p.input_dim = input_dim;
  p.hidden_dim = hidden_dim;
  const auto gates = static_cast<std::size_t>(4) * hidden_dim;
  p.w_input.assign(gates * input_dim, 0.0f);
  p.w_recurrent.assign(gates * hidden_dim, 0.0f);
  p.bias_input.assign(gates, 0.0f);
  p.bias_recurrent.assign(gates, 0.0f);
  return p;
}

void LstmLayerParams::Validate() const {
  const auto gates = static_cast<std::size_t>(4) * hidden_dim;
  if (input_dim <= 0 || hidden_dim <= 0 ||
      w_input.size() != gates * input_dim ||
      w_recurrent.size() != gates * hidden_dim || bias_input.size() != gates ||
      bias_recurrent.size() != gates) {
    Fail(ErrorKind::kShape, "lstm parameters disagree with dims " +
                                std::to_string(input_dim) + "->" +
                                std::to_string(hidden_dim));
  }
  if (!AllFinite(w_input) || !AllFinite(w_recurrent) ||
      !AllFinite(bias_input) || !AllFinite(bias_recurrent)) {
    Fail(ErrorKind::kData, "lstm parameters contain non-finite values");
  }
}

AffineParams AffineParams::Zeros(int input_dim, int output_dim) {
  AffineParams p;
  p.input_dim = input_dim;
  p.output_dim = output_dim;
  p.weight.assign(static_cast<std::size_t>(output_dim) * input_dim, 0.0f);
  p.bias.assign(output_dim, 0.0f);
  return p;
}

void AffineParams::Validate() const {
  if (input_dim <= 0 || output_dim <= 0 ||
      weight.size() != static_cast<std::size_t>(output_dim) * input_dim ||
      bias.size() != static_cast<std::size_t>(output_dim)) {
    Fail(ErrorKind::kShape, "affine parameters disagree with dims");
  }
  if (!AllFinite(weight) || !AllFinite(bias)) {
    Fail(ErrorKind::kData, "affine parameters contain non-finite values");
  }
}

std::vector<float> LstmStep(const LstmLayerParams& params,
                            RecurrentState& state, std::span<const float> x) {
  if (!AllFinite(x) || !AllFinite(state.h) || !AllFinite(state.c)) {
    Fail(ErrorKind::kData, "lstm step: non-finite input or state");
  }
  kernels::LstmCellBatch(params, x, 1, state.h, state.c);
  return state.h;
}

std::vector<float> LstmSequence(const LstmLayerParams& params,
                                RecurrentState& state,
                                std::span<const float> xs) {
  if (params.input_dim <= 0 || xs.size() % params.input_dim != 0) {
    Fail(ErrorKind::kShape, "lstm sequence length is not a multiple of the "
                            "input width");
  }
  const std::size_t steps = xs.size() / params.input_dim;
  std::vector<float> ys;
  ys.reserve(steps * params.hidden_dim);
  for (std::size_t t = 0; t < steps; ++t) {
    const std::vector<float> y = LstmStep(
        params, state, xs.subspan(t * params.input_dim, params.input_dim));
    ys.insert(ys.end(), y.begin(), y.end());
  }
  return ys;
}

std::vector<float> Affine(const AffineParams& params, std::span<const float> x) {
  std::vector<float> y(params.output_dim);
  kernels::AffineBatch(params, x, 1, y);
  return y;
}

}  // namespace ffsn
