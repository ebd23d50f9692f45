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
// Batched layer kernels. A batch is a set of independent rows (one per
// sub-band frequency, or a single row for the full-band models) evaluated
// against shared weights.
//
// Two implementations share these signatures:
//   ffsn::kernels          tiled SIMD loops, OpenMP-parallel over output tiles
//   ffsn::kernels::serial  straightforward loops, kept as the test reference
//
// The parallel kernels assign every output element to exactly one tile, so
// results do not depend on the number of threads. They are not bit-identical
// to the serial reference (different summation order).

#ifndef FFSN_KERNELS_H_
#define FFSN_KERNELS_H_

#include <span>

#include "ffsn/lstm.h"

namespace ffsn::kernels {

// out[b][n] = sum_k a[b][k] * w[n][k]  (or += when accumulate is set).
void DotGemm(std::span<const float> a, int batch, std::span<const float> w,
             int rows, int depth, std::span<float> out, bool accumulate);

// One LSTM step for `batch` independent states. x is batch x input_dim; h and
// c are batch x hidden_dim and are updated in place.
void LstmCellBatch(const LstmLayerParams& params, std::span<const float> x,
                   int batch, std::span<float> h, std::span<float> c);

// y = x * weight^T + bias for `batch` rows.
void AffineBatch(const AffineParams& params, std::span<const float> x,
                 int batch, std::span<float> y);

namespace serial {

void DotGemm(std::span<const float> a, int batch, std::span<const float> w,
             int rows, int depth, std::span<float> out, bool accumulate);
void LstmCellBatch(const LstmLayerParams& params, std::span<const float> x,
                   int batch, std::span<float> h, std::span<float> c);
void AffineBatch(const AffineParams& params, std::span<const float> x,
                 int batch, std::span<float> y);

}  // namespace serial

// Shape checks shared by both implementations.
void CheckGemmShapes(std::span<const float> a, int batch,
                     std::span<const float> w, int rows, int depth,
                     std::span<const float> out);
void CheckLstmBatchShapes(const LstmLayerParams& params,
                          std::span<const float> x, int batch,
                          std::span<const float> h, std::span<const float> c);
void CheckAffineBatchShapes(const AffineParams& params,
                            std::span<const float> x, int batch,
                            std::span<const float> y);

}  // namespace ffsn::kernels

#endif  // FFSN_KERNELS_H_
