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

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ffsn/error.h"
#include "ffsn/kernels.h"

namespace ffsn::kernels {

void CheckLstmBatchShapes(const LstmLayerParams& params,
                          std::span<const float> x, int batch,
                          std::span<const float> h, std::span<const float> c) {
  const auto b = static_cast<std::size_t>(batch);
  if (batch < 0 || x.size() != b * params.input_dim ||
      h.size() != b * params.hidden_dim || c.size() != b * params.hidden_dim) {
    Fail(ErrorKind::kShape,
         "lstm: expected batch " + std::to_string(batch) + " x input " +
             std::to_string(params.input_dim) + " / hidden " +
             std::to_string(params.hidden_dim) + ", got x=" +
             std::to_string(x.size()) + " h=" + std::to_string(h.size()) +
             " c=" + std::to_string(c.size()));
  }
}

void CheckAffineBatchShapes(const AffineParams& params,
                            std::span<const float> x, int batch,
                            std::span<const float> y) {
  const auto b = static_cast<std::size_t>(batch);
  if (batch < 0 || x.size() != b * params.input_dim ||
      y.size() != b * params.output_dim) {
    Fail(ErrorKind::kShape, "affine: expected input width " +
                                std::to_string(params.input_dim) + ", got " +
                                std::to_string(x.size()));
  }
}

void CheckGemmShapes(std::span<const float> a, int batch,
                     std::span<const float> w, int rows, int depth,
                     std::span<const float> out) {
  if (batch < 0 || rows < 0 || depth < 0 ||
      a.size() != static_cast<std::size_t>(batch) * depth ||
      w.size() != static_cast<std::size_t>(rows) * depth ||
      out.size() != static_cast<std::size_t>(batch) * rows) {
    Fail(ErrorKind::kShape, "gemm: operand sizes disagree with dimensions");
  }
}

namespace serial {

void DotGemm(std::span<const float> a, int batch, std::span<const float> w,
             int rows, int depth, std::span<float> out, bool accumulate) {
  CheckGemmShapes(a, batch, w, rows, depth, out);
  for (int b = 0; b < batch; ++b) {
    for (int n = 0; n < rows; ++n) {
      float acc = 0.0f;
      for (int k = 0; k < depth; ++k) {
        acc += a[static_cast<std::size_t>(b) * depth + k] *
               w[static_cast<std::size_t>(n) * depth + k];
      }
      float& dst = out[static_cast<std::size_t>(b) * rows + n];
      dst = accumulate ? dst + acc : acc;
    }
  }
}

void LstmCellBatch(const LstmLayerParams& params, std::span<const float> x,
                   int batch, std::span<float> h, std::span<float> c) {
  CheckLstmBatchShapes(params, x, batch, h, c);
  const int hidden = params.hidden_dim;
  const int in = params.input_dim;
  std::vector<float> z(static_cast<std::size_t>(4) * hidden);
  for (int b = 0; b < batch; ++b) {
    const float* xb = x.data() + static_cast<std::size_t>(b) * in;
    float* hb = h.data() + static_cast<std::size_t>(b) * hidden;
    float* cb = c.data() + static_cast<std::size_t>(b) * hidden;
    for (int r = 0; r < 4 * hidden; ++r) {
      float from_input = 0.0f;
      for (int k = 0; k < in; ++k) {
        from_input += params.w_input[static_cast<std::size_t>(r) * in + k] * xb[k];
      }
      float from_state = 0.0f;
      for (int k = 0; k < hidden; ++k) {
        from_state +=
            params.w_recurrent[static_cast<std::size_t>(r) * hidden + k] * hb[k];
      }
      z[r] = from_input + from_state + params.bias_input[r] +
             params.bias_recurrent[r];
    }
    for (int j = 0; j < hidden; ++j) {
      const float i_gate = 1.0f / (1.0f + std::exp(-z[j]));
      const float f_gate = 1.0f / (1.0f + std::exp(-z[hidden + j]));
      const float g_cell = std::tanh(z[2 * hidden + j]);
      const float o_gate = 1.0f / (1.0f + std::exp(-z[3 * hidden + j]));
      cb[j] = f_gate * cb[j] + i_gate * g_cell;
      hb[j] = o_gate * std::tanh(cb[j]);
    }
  }
}

void AffineBatch(const AffineParams& params, std::span<const float> x,
                 int batch, std::span<float> y) {
  CheckAffineBatchShapes(params, x, batch, y);
  for (int b = 0; b < batch; ++b) {
    for (int n = 0; n < params.output_dim; ++n) {
      float acc = 0.0f;
      for (int k = 0; k < params.input_dim; ++k) {
        acc += params.weight[static_cast<std::size_t>(n) * params.input_dim + k] *
               x[static_cast<std::size_t>(b) * params.input_dim + k];
      }
      y[static_cast<std::size_t>(b) * params.output_dim + n] =
          acc + params.bias[n];
    }
  }
}

}  // namespace serial
}  // namespace ffsn::kernels
