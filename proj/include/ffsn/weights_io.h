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
// Weight files (".ffsn"), all integers u32 little-endian:
//
//   "FFSN" | version (1)
//   F | F_mel | N | tau | l2m_h0 | l2m_h1 | sub_h0 | sub_h1 | m2l_h0 | m2l_h1
//   | sub_band_present (0 or 1)
//   tensor count | tensors (see tensor_io.h) | crc32 of all preceding bytes
//
// Tensors, in this order on save:
//   mel.filterbank                                   F_mel x F
//   {l2m,sub,m2l}.lstm{0,1}.w_input                  4H x in
//   {l2m,sub,m2l}.lstm{0,1}.w_recurrent              4H x H
//   {l2m,sub,m2l}.lstm{0,1}.bias_input               4H
//   {l2m,sub,m2l}.lstm{0,1}.bias_recurrent           4H
//   {l2m,sub,m2l}.affine.weight                      out x in
//   {l2m,sub,m2l}.affine.bias                        out
// LSTM gate blocks are ordered [input, forget, cell, output]. The sub.*
// tensors are absent when sub_band_present is 0.

#ifndef FFSN_WEIGHTS_IO_H_
#define FFSN_WEIGHTS_IO_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ffsn/model.h"
#include "ffsn/tensor_io.h"

namespace ffsn {

inline constexpr std::uint32_t kWeightFormatVersion = 1;

struct LoadedModel {
  ModelWeights weights;
  // factor is 2 when the file has a sub-band model and infinite otherwise.
  ModelConfig config;
};

// Canonical tensor list for `weights`, in file order.
std::vector<NamedTensor> WeightTensors(const ModelWeights& weights);

// Throws kConfiguration if the weights disagree with the config.
std::vector<std::uint8_t> EncodeWeights(const ModelWeights& weights,
                                        const ModelConfig& config);
// kFormat for bad magic, version, CRC or framing; kValidation for unknown,
// duplicate or missing tensors, shape mismatches and invalid values.
LoadedModel DecodeWeights(std::span<const std::uint8_t> bytes);

void SaveWeights(const ModelWeights& weights, const ModelConfig& config,
                 const std::string& path);
LoadedModel LoadWeights(const std::string& path);

}  // namespace ffsn

#endif  // FFSN_WEIGHTS_IO_H_
