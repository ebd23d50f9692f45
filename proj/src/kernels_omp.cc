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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstring>
#include <vector>

#include "ffsn/kernels.h"

namespace ffsn::kernels {
namespace {

constexpr int kLanes = 16;
using Vec = float __attribute__((vector_size(kLanes * sizeof(float))));

// Tiles of kTileBatch batch rows x kTileRows weight rows share one pass over
// the depth dimension.
constexpr int kTileBatch = 4;
constexpr int kTileRows = 4;

// Below this many multiply-adds the OpenMP fork costs more than it saves.
constexpr long long kParallelThreshold = 1 << 16;

inline Vec LoadVec(const float* p) {
  Vec v;
  std::memcpy(&v, p, sizeof(v));
  return v;
}

inline float HorizontalSum(Vec v) {
  float s = 0.0f;
  for (int i = 0; i < kLanes; ++i) s += v[i];
  return s;
}

template <int MR, int NR>
void Tile(const float* a, const float* w, int depth, float* out, int ldo,
          bool accumulate) {
  Vec acc[MR][NR] = {};
  int k = 0;
  for (; k + kLanes <= depth; k += kLanes) {
    Vec wv[NR];
    for (int n = 0; n < NR; ++n) {
      wv[n] = LoadVec(w + static_cast<std::size_t>(n) * depth + k);
    }
    for (int m = 0; m < MR; ++m) {
      const Vec av = LoadVec(a + static_cast<std::size_t>(m) * depth + k);
      for (int n = 0; n < NR; ++n) acc[m][n] += av * wv[n];
    }
  }
  for (int m = 0; m < MR; ++m) {
    for (int n = 0; n < NR; ++n) {
      float s = HorizontalSum(acc[m][n]);
      for (int kk = k; kk < depth; ++kk) {
        s += a[static_cast<std::size_t>(m) * depth + kk] *
             w[static_cast<std::size_t>(n) * depth + kk];
      }
      float& dst = out[static_cast<std::size_t>(m) * ldo + n];
      dst = accumulate ? dst + s : s;
    }
  }
}

template <int MR>
void TileRows(int nr, const float* a, const float* w, int depth, float* out,
              int ldo, bool accumulate) {
  switch (nr) {
    case 4:
      return Tile<MR, 4>(a, w, depth, out, ldo, accumulate);
    case 3:
      return Tile<MR, 3>(a, w, depth, out, ldo, accumulate);
    case 2:
      return Tile<MR, 2>(a, w, depth, out, ldo, accumulate);
    default:
      return Tile<MR, 1>(a, w, depth, out, ldo, accumulate);
  }
}

void DispatchTile(int mr, int nr, const float* a, const float* w, int depth,
                  float* out, int ldo, bool accumulate) {
  switch (mr) {
    case 4:
      return TileRows<4>(nr, a, w, depth, out, ldo, accumulate);
    case 3:
      return TileRows<3>(nr, a, w, depth, out, ldo, accumulate);
    case 2:
      return TileRows<2>(nr, a, w, depth, out, ldo, accumulate);
    default:
      return TileRows<1>(nr, a, w, depth, out, ldo, accumulate);
  }
}

inline float Sigmoid(float x) { return 1.0f / (1.0f + std::exp(-x)); }

std::vector<float>& GateScratch() {
  thread_local std::vector<float> scratch;
  return scratch;
}

}  // namespace

void DotGemm(std::span<const float> a, int batch, std::span<const float> w,
             int rows, int depth, std::span<float> out, bool accumulate) {
  CheckGemmShapes(a, batch, w, rows, depth, out);
  const int row_tiles = (rows + kTileRows - 1) / kTileRows;
  const int batch_tiles = (batch + kTileBatch - 1) / kTileBatch;
  const long long work = static_cast<long long>(batch) * rows * depth;
#pragma omp parallel for collapse(2) schedule(static) \
    if (work >= kParallelThreshold)
  for (int rt = 0; rt < row_tiles; ++rt) {
    for (int bt = 0; bt < batch_tiles; ++bt) {
      const int n0 = rt * kTileRows;
      const int m0 = bt * kTileBatch;
      DispatchTile(std::min(kTileBatch, batch - m0),
                   std::min(kTileRows, rows - n0),
                   a.data() + static_cast<std::size_t>(m0) * depth,
                   w.data() + static_cast<std::size_t>(n0) * depth, depth,
                   out.data() + static_cast<std::size_t>(m0) * rows + n0, rows,
                   accumulate);
    }
  }
}

void LstmCellBatch(const LstmLayerParams& params, std::span<const float> x,
                   int batch, std::span<float> h, std::span<float> c) {
  CheckLstmBatchShapes(params, x, batch, h, c);
  const int hidden = params.hidden_dim;
  const int gates = 4 * hidden;
  std::vector<float>& z = GateScratch();
  z.resize(static_cast<std::size_t>(batch) * gates);

  DotGemm(x, batch, params.w_input, gates, params.input_dim, z, false);
  DotGemm(h, batch, params.w_recurrent, gates, hidden, z, true);

  const float* bi = params.bias_input.data();
  const float* br = params.bias_recurrent.data();
  const long long work = static_cast<long long>(batch) * hidden;
#pragma omp parallel for schedule(static) if (work >= kParallelThreshold / 16)
  for (int b = 0; b < batch; ++b) {
    float* zb = z.data() + static_cast<std::size_t>(b) * gates;
    float* hb = h.data() + static_cast<std::size_t>(b) * hidden;
    float* cb = c.data() + static_cast<std::size_t>(b) * hidden;
    for (int j = 0; j < hidden; ++j) {
      const float i_gate = Sigmoid(zb[j] + bi[j] + br[j]);
      const float f_gate =
          Sigmoid(zb[hidden + j] + bi[hidden + j] + br[hidden + j]);
      const float g_cell = std::tanh(zb[2 * hidden + j] + bi[2 * hidden + j] +
                                     br[2 * hidden + j]);
      const float o_gate =
          Sigmoid(zb[3 * hidden + j] + bi[3 * hidden + j] + br[3 * hidden + j]);
      cb[j] = f_gate * cb[j] + i_gate * g_cell;
      hb[j] = o_gate * std::tanh(cb[j]);
    }
  }
}

void AffineBatch(const AffineParams& params, std::span<const float> x,
                 int batch, std::span<float> y) {
  CheckAffineBatchShapes(params, x, batch, y);
  DotGemm(x, batch, params.weight, params.output_dim, params.input_dim, y,
          false);
  for (int b = 0; b < batch; ++b) {
    float* yb = y.data() + static_cast<std::size_t>(b) * params.output_dim;
    for (int n = 0; n < params.output_dim; ++n) yb[n] += params.bias[n];
  }
}

}  // namespace ffsn::kernels
