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
// Analytic parameter and multiply-accumulate accounting.
//
//   recurrent params  4 (in h + h^2 + 2 h)
//   affine params     in out + out
//   recurrent MACs    4 (in h + h^2 + h) + 3 h     per step
//   affine MACs       in out                       per step
//
// Each layer runs `executions_per_frame` times per frame; the sub-band stack
// of the fast model runs F_mel / m times. Layers that never run contribute
// neither parameters nor MACs.

#ifndef FFSN_COMPLEXITY_H_
#define FFSN_COMPLEXITY_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffsn/model.h"

namespace ffsn {

enum class LayerKind { kRecurrent, kAffine };

struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / den; }
};

struct LayerDescriptor {
  std::string stack;
  LayerKind kind = LayerKind::kAffine;
  int input_dim = 0;
  // Hidden width for recurrent layers.
  int output_dim = 0;
  Rational executions_per_frame;
};

struct ArchitecturePreset {
  std::string name;
  std::vector<LayerDescriptor> layers;
  double frame_rate = 62.5;
};

struct StackCost {
  std::string stack;
  std::int64_t params = 0;
  double macs_per_frame = 0.0;
};

struct CostReport {
  std::string preset;
  std::int64_t params = 0;
  double macs_per_frame = 0.0;
  double macs_per_second = 0.0;
  std::vector<StackCost> stacks;
};

std::int64_t RecurrentLayerParams(int input_dim, int hidden_dim);
std::int64_t AffineLayerParams(int input_dim, int output_dim);
std::int64_t RecurrentLayerMacs(int input_dim, int hidden_dim);
std::int64_t AffineLayerMacs(int input_dim, int output_dim);

// The fast model at factor `config.factor`.
ArchitecturePreset FastFullSubNetPreset(const ModelConfig& config);
ArchitecturePreset FastFullSubNetPreset(DownsampleFactor factor);
// Full-band 257 -> 512/512 -> 257 plus a linear-frequency sub-band stack
// 32 -> 384/384 -> 2 run for every one of the 257 bins.
ArchitecturePreset FullSubNetPreset();
// Four 512-unit LSTM layers on 257 bins, affine to 514 outputs.
ArchitecturePreset FullBandPreset();

// Names: fast_fullsubnet (m = 1), fast_fullsubnet_m<k>, fast_fullsubnet_minf,
// fullsubnet, fullband. Throws kUsage for anything else.
ArchitecturePreset PresetByName(std::string_view name);
std::vector<std::string> StandardPresetNames();

std::int64_t CountParams(const ArchitecturePreset& preset);
CostReport CountMacs(const ArchitecturePreset& preset);

enum class TableFormat { kText, kCsv };

// One row per report with MACs relative to the fullsubnet preset. An empty
// list yields only the header.
std::string Compare(std::span<const CostReport> reports, TableFormat format);

}  // namespace ffsn

#endif  // FFSN_COMPLEXITY_H_
