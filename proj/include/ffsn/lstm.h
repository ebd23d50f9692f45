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
// Forward evaluation of unidirectional LSTM layers and affine layers.
//
// Gate blocks are stored in the order [input, forget, cell, output]:
//   z = w_input * x + bias_input + w_recurrent * h + bias_recurrent
//   i = sigmoid(z_i), f = sigmoid(z_f), g = tanh(z_g), o = sigmoid(z_o)
//   c' = f * c + i * g,  h' = o * tanh(c')

#ifndef FFSN_LSTM_H_
#define FFSN_LSTM_H_

#include <cstddef>
#include <span>
#include <vector>

namespace ffsn {

struct LstmLayerParams {
  int input_dim = 0;
  int hidden_dim = 0;
  std::vector<float> w_input;      // (4 * hidden) x input, row-major
  std::vector<float> w_recurrent;  // (4 * hidden) x hidden, row-major
  std::vector<float> bias_input;   // 4 * hidden
  std::vector<float> bias_recurrent;

  static LstmLayerParams Zeros(int input_dim, int hidden_dim);

  std::size_t ParameterCount() const {
    return w_input.size() + w_recurrent.size() + bias_input.size() +
           bias_recurrent.size();
  }
  // Throws kShape if the tensor sizes disagree with the dimensions and kData
  // on non-finite values.
  void Validate() const;
};

struct AffineParams {
  int input_dim = 0;
  int output_dim = 0;
  std::vector<float> weight;  // output x input, row-major
  std::vector<float> bias;

  static AffineParams Zeros(int input_dim, int output_dim);

  std::size_t ParameterCount() const { return weight.size() + bias.size(); }
  void Validate() const;
};

struct RecurrentState {
  std::vector<float> h;
  std::vector<float> c;

  static RecurrentState Zeros(int hidden_dim) {
    return {std::vector<float>(hidden_dim, 0.0f),
            std::vector<float>(hidden_dim, 0.0f)};
  }
};

// One time step. Updates `state` in place and returns the new hidden vector.
std::vector<float> LstmStep(const LstmLayerParams& params,
                            RecurrentState& state, std::span<const float> x);

// Left fold of LstmStep over `xs`, a sequence of input_dim-wide frames laid
// out back to back. Returns the hidden outputs, hidden_dim per frame.
std::vector<float> LstmSequence(const LstmLayerParams& params,
                                RecurrentState& state,
                                std::span<const float> xs);

std::vector<float> Affine(const AffineParams& params, std::span<const float> x);

}  // namespace ffsn

#endif  // FFSN_LSTM_H_
