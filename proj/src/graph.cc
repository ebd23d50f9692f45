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

#include "ffsn/graph.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ffsn/cirm.h"
#include "ffsn/error.h"
#include "ffsn/kernels.h"

namespace ffsn {
namespace {

BatchState MakeBatchState(int batch, int hidden) {
  const auto n = static_cast<std::size_t>(batch) * hidden;
  return {batch, hidden, std::vector<float>(n, 0.0f),
          std::vector<float>(n, 0.0f)};
}

std::vector<float> RunFullBand(const RecurrentStack& stack,
                               std::span<const float> x, StackState& state) {
  const std::vector<float> h0 = LstmStep(stack.lstm[0], state[0], x);
  const std::vector<float> h1 = LstmStep(stack.lstm[1], state[1], h0);
  return Affine(stack.affine, h1);
}

}  // namespace

StackState MakeStackState(const RecurrentStack& stack) {
  return {RecurrentState::Zeros(stack.lstm[0].hidden_dim),
          RecurrentState::Zeros(stack.lstm[1].hidden_dim)};
}

SubbandState MakeSubbandState(const RecurrentStack& sub, int num_mel) {
  return {{MakeBatchState(num_mel, sub.lstm[0].hidden_dim),
           MakeBatchState(num_mel, sub.lstm[1].hidden_dim)}};
}

void CumulativeNormalizer::Normalize(std::span<const float> mel,
                                     std::span<float> out) {
  if (out.size() != mel.size()) {
    Fail(ErrorKind::kShape, "normalizer: output length mismatch");
  }
  for (float v : mel) sum_ += v;
  count_ += static_cast<std::int64_t>(mel.size());
  const double mean = count_ > 0 ? sum_ / static_cast<double>(count_) : 0.0;
  const double denom = mean + kEpsilon;
  for (std::size_t i = 0; i < mel.size(); ++i) {
    out[i] = static_cast<float>(mel[i] / denom);
  }
}

std::vector<float> L2mForward(const ModelWeights& weights,
                              std::span<const float> normalized_mel,
                              StackState& state) {
  if (static_cast<int>(normalized_mel.size()) != weights.l2m.input_dim()) {
    Fail(ErrorKind::kShape, "l2m input must have " +
                                std::to_string(weights.l2m.input_dim()) +
                                " mel values");
  }
  return RunFullBand(weights.l2m, normalized_mel, state);
}

SubbandFeatures AssembleSubbandInputs(std::span<const float> mel,
                                      std::span<const float> embedding,
                                      int neighbors) {
  const int num_mel = static_cast<int>(mel.size());
  if (embedding.size() != mel.size()) {
    Fail(ErrorKind::kShape, "mel frame and embedding lengths differ");
  }
  if (neighbors < 0 || neighbors >= num_mel) {
    Fail(ErrorKind::kConfiguration,
         "neighbor count " + std::to_string(neighbors) +
             " must be below the band count " + std::to_string(num_mel));
  }
  SubbandFeatures out;
  out.num_mel = num_mel;
  out.width = 2 * neighbors + 2;
  out.values.resize(static_cast<std::size_t>(num_mel) * out.width);
  for (int f = 0; f < num_mel; ++f) {
    float* row = out.values.data() + static_cast<std::size_t>(f) * out.width;
    for (int k = -neighbors; k <= neighbors; ++k) {
      int idx = f + k;
      if (idx < 0) idx = -idx;
      if (idx >= num_mel) idx = 2 * (num_mel - 1) - idx;
      row[k + neighbors] = mel[idx];
    }
    row[out.width - 1] = embedding[f];
  }
  return out;
}

SubbandFeatures DownsampleBlock(std::span<const SubbandFeatures> frames) {
  if (frames.empty()) Fail(ErrorKind::kContract, "empty down-sampling block");
  SubbandFeatures sum = frames[0];
  for (std::size_t i = 1; i < frames.size(); ++i) {
    if (frames[i].values.size() != sum.values.size()) {
      Fail(ErrorKind::kShape, "down-sampling block frames differ in shape");
    }
    for (std::size_t j = 0; j < sum.values.size(); ++j) {
      sum.values[j] += frames[i].values[j];
    }
  }
  const auto count = static_cast<float>(frames.size());
  for (float& v : sum.values) v /= count;
  return sum;
}

std::vector<float> SubForward(const ModelWeights& weights,
                              const SubbandFeatures& features,
                              SubbandState& state) {
  if (!weights.sub) {
    Fail(ErrorKind::kContract, "weights have no sub-band model");
  }
  const RecurrentStack& sub = *weights.sub;
  if (state.num_bands() != features.num_mel ||
      state.layers[1].batch != features.num_mel) {
    Fail(ErrorKind::kContract,
         "sub-band state count " + std::to_string(state.num_bands()) +
             " differs from band count " + std::to_string(features.num_mel));
  }
  if (features.width != sub.input_dim()) {
    Fail(ErrorKind::kShape, "sub-band feature width disagrees with weights");
  }
  const int bands = features.num_mel;
  kernels::LstmCellBatch(sub.lstm[0], features.values, bands,
                         state.layers[0].h, state.layers[0].c);
  kernels::LstmCellBatch(sub.lstm[1], state.layers[0].h, bands,
                         state.layers[1].h, state.layers[1].c);
  std::vector<float> out(static_cast<std::size_t>(bands) * sub.output_dim());
  kernels::AffineBatch(sub.affine, state.layers[1].h, bands, out);
  return out;
}

std::vector<float> M2lForward(const ModelWeights& weights,
                              std::span<const float> embedding,
                              std::span<const float> sub_out,
                              StackState& state) {
  std::vector<float> x(embedding.begin(), embedding.end());
  x.insert(x.end(), sub_out.begin(), sub_out.end());
  if (static_cast<int>(x.size()) != weights.m2l.input_dim()) {
    Fail(ErrorKind::kShape, "m2l input width " + std::to_string(x.size()) +
                                " but weights expect " +
                                std::to_string(weights.m2l.input_dim()));
  }
  return RunFullBand(weights.m2l, x, state);
}

FrameGraph::FrameGraph(const ModelWeights& weights, const ModelConfig& config)
    : weights_(&weights), config_(config) {
  weights.CheckConsistent(config);
  l2m_state_ = MakeStackState(weights.l2m);
  m2l_state_ = MakeStackState(weights.m2l);
  if (config.sub_band_present()) {
    sub_state_ = MakeSubbandState(*weights.sub, config.num_mel);
    held_subband_.assign(config.num_mel, 0.0f);
  }
}

std::vector<float> FrameGraph::Step(
    std::span<const std::complex<float>> noisy_frame, bool final_step,
    StepTrace* trace) {
  if (static_cast<int>(noisy_frame.size()) != config_.num_bins) {
    Fail(ErrorKind::kShape, "frame has " + std::to_string(noisy_frame.size()) +
                                " bins, model expects " +
                                std::to_string(config_.num_bins));
  }
  std::vector<float> magnitude(noisy_frame.size());
  for (std::size_t f = 0; f < noisy_frame.size(); ++f) {
    magnitude[f] = std::abs(noisy_frame[f]);
    if (!std::isfinite(magnitude[f])) {
      Fail(ErrorKind::kData, "non-finite spectrum value");
    }
  }
  const std::vector<float> mel = weights_->mel.Apply(magnitude);
  std::vector<float> normalized(mel.size());
  normalizer_.Normalize(mel, normalized);

  const std::vector<float> embedding =
      L2mForward(*weights_, normalized, l2m_state_);

  if (config_.sub_band_present()) {
    SubbandFeatures features =
        AssembleSubbandInputs(normalized, embedding, config_.neighbors);
    if (block_count_ == 0) {
      block_sum_ = std::move(features);
    } else {
      for (std::size_t j = 0; j < block_sum_.values.size(); ++j) {
        block_sum_.values[j] += features.values[j];
      }
    }
    ++block_count_;
    const int m = config_.factor.value();
    const bool block_end = (steps_ + 1) % m == 0;
    if (block_end || final_step) {
      const auto count = static_cast<float>(block_count_);
      for (float& v : block_sum_.values) v /= count;
      held_subband_ = SubForward(*weights_, block_sum_, sub_state_);
      block_count_ = 0;
      ++subband_steps_;
    }
  }

  std::vector<float> mask =
      M2lForward(*weights_, embedding, held_subband_, m2l_state_);
  ++steps_;
  if (trace != nullptr) {
    trace->mel = mel;
    trace->normalized_mel = std::move(normalized);
    trace->embedding = embedding;
    trace->subband = held_subband_;
    trace->mask = mask;
  }
  return mask;
}

ComplexSpectrogram ForwardOffline(const ModelWeights& weights,
                                  const ModelConfig& config,
                                  const ComplexSpectrogram& noisy,
                                  std::vector<StepTrace>* traces) {
  const int frames = noisy.num_frames();
  if (frames > 0 && noisy.num_bins() != config.num_bins) {
    Fail(ErrorKind::kShape, "spectrogram bin count disagrees with config");
  }
  FrameGraph graph(weights, config);
  ComplexSpectrogram enhanced(frames, config.num_bins);
  if (frames == 0) return enhanced;

  const int tau = config.look_ahead;
  const int total_steps = frames + tau;
  const std::vector<std::complex<float>> zero_frame(config.num_bins);
  if (traces != nullptr) traces->assign(total_steps, StepTrace{});
  for (int t = 0; t < total_steps; ++t) {
    const bool flush = t >= frames;
    const bool final_step = flush && t == total_steps - 1;
    const std::vector<float> mask = graph.Step(
        flush ? std::span<const std::complex<float>>(zero_frame)
              : noisy.frame(t),
        final_step, traces != nullptr ? &(*traces)[t] : nullptr);
    if (t >= tau) {
      CirmDecompressApply(mask, noisy.frame(t - tau), enhanced.frame(t - tau));
    }
  }
  return enhanced;
}

}  // namespace ffsn
