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
// The enhancement graph. Per frame:
//
//   |X| -> mel -> cumulative-mean normalization -> l2m full-band stack
//       -> sub-band inputs (2N+1 mel neighbors + l2m embedding per band)
//       -> causal block average over m frames -> shared sub-band stack
//       -> [embedding; held sub-band output] -> m2l full-band stack
//       -> compressed complex ratio mask (2F values)
//
// The mask produced at step t applies to input frame t - look_ahead.

#ifndef FFSN_GRAPH_H_
#define FFSN_GRAPH_H_

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "ffsn/dsp.h"
#include "ffsn/lstm.h"
#include "ffsn/model.h"

namespace ffsn {

using StackState = std::array<RecurrentState, 2>;

StackState MakeStackState(const RecurrentStack& stack);

// Hidden and cell states of one layer for a batch of independent sequences,
// batch x hidden_dim each.
struct BatchState {
  int batch = 0;
  int hidden = 0;
  std::vector<float> h;
  std::vector<float> c;
};

// One BatchState per sub-band LSTM layer, one row per mel band.
struct SubbandState {
  std::array<BatchState, 2> layers;
  int num_bands() const { return layers[0].batch; }
};

SubbandState MakeSubbandState(const RecurrentStack& sub, int num_mel);

// num_mel rows of width 2N+2.
struct SubbandFeatures {
  int num_mel = 0;
  int width = 0;
  std::vector<float> values;

  std::span<const float> row(int f) const {
    return {values.data() + static_cast<std::size_t>(f) * width,
            static_cast<std::size_t>(width)};
  }
};

// Running mean of every mel value seen so far; x / (mean + 1e-10).
class CumulativeNormalizer {
 public:
  static constexpr double kEpsilon = 1e-10;

  void Normalize(std::span<const float> mel, std::span<float> out);

  double running_sum() const { return sum_; }
  std::int64_t running_count() const { return count_; }

 private:
  double sum_ = 0.0;
  std::int64_t count_ = 0;
};

std::vector<float> L2mForward(const ModelWeights& weights,
                              std::span<const float> normalized_mel,
                              StackState& state);

// For band f: mel[f-N .. f+N] with reflection at the edges (mirror, edge bin
// not repeated), followed by embedding[f]. Throws kConfiguration when
// N >= num_mel.
SubbandFeatures AssembleSubbandInputs(std::span<const float> mel,
                                      std::span<const float> embedding,
                                      int neighbors);

// Element-wise mean of the given frames. Throws kContract on an empty block.
SubbandFeatures DownsampleBlock(std::span<const SubbandFeatures> frames);

// Runs the shared sub-band stack on every band. Returns one scalar per band.
std::vector<float> SubForward(const ModelWeights& weights,
                              const SubbandFeatures& features,
                              SubbandState& state);

// `sub_out` is empty when the model has no sub-band path.
std::vector<float> M2lForward(const ModelWeights& weights,
                              std::span<const float> embedding,
                              std::span<const float> sub_out,
                              StackState& state);

// Intermediate values of one step, for feature dumps.
struct StepTrace {
  std::vector<float> mel;
  std::vector<float> normalized_mel;
  std::vector<float> embedding;
  std::vector<float> subband;  // sub-band output consumed by m2l this step
  std::vector<float> mask;
};

// Frame-synchronous model state shared by the offline and streaming paths.
// Holds a reference to `weights`, which must outlive it.
class FrameGraph {
 public:
  FrameGraph(const ModelWeights& weights, const ModelConfig& config);

  // Consumes one noisy frame (num_bins values) and returns the compressed
  // mask for this step. `final_step` marks the last step of a sequence; a
  // partially filled down-sampling block is then averaged and evaluated.
  std::vector<float> Step(std::span<const std::complex<float>> noisy_frame,
                          bool final_step, StepTrace* trace = nullptr);

  std::int64_t steps() const { return steps_; }
  // Number of sub-band evaluations so far.
  std::int64_t subband_steps() const { return subband_steps_; }
  bool has_subband_state() const { return !sub_state_.layers[0].h.empty(); }
  const ModelConfig& config() const { return config_; }

 private:
  const ModelWeights* weights_;
  ModelConfig config_;
  CumulativeNormalizer normalizer_;
  StackState l2m_state_;
  SubbandState sub_state_;
  StackState m2l_state_;
  SubbandFeatures block_sum_;
  int block_count_ = 0;
  std::vector<float> held_subband_;
  std::int64_t steps_ = 0;
  std::int64_t subband_steps_ = 0;
};

// Enhances a whole spectrogram. The graph runs T + look_ahead steps, the last
// look_ahead on zero frames. Output has the shape of `noisy`.
ComplexSpectrogram ForwardOffline(const ModelWeights& weights,
                                  const ModelConfig& config,
                                  const ComplexSpectrogram& noisy,
                                  std::vector<StepTrace>* traces = nullptr);

}  // namespace ffsn

#endif  // FFSN_GRAPH_H_
