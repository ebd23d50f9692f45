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

#include "ffsn/streaming.h"

#include <algorithm>
#include <cmath>

#include "ffsn/cirm.h"
#include "ffsn/error.h"

namespace ffsn {
namespace {

const ModelWeights& Checked(const std::shared_ptr<const ModelWeights>& weights,
                            const AnalysisConfig& analysis) {
  analysis.Validate();
  if (!weights) Fail(ErrorKind::kConfiguration, "no weights given");
  return *weights;
}

}  // namespace

StreamingEnhancer::StreamingEnhancer(std::shared_ptr<const ModelWeights> weights,
                                     const ModelConfig& config,
                                     AnalysisConfig analysis)
    : weights_(std::move(weights)),
      config_(config),
      analysis_(std::move(analysis)),
      graph_(Checked(weights_, analysis_), config),
      ola_(analysis_),
      input_(analysis_.overlap(), 0.0f),
      bins_(analysis_.num_bins()),
      enhanced_(analysis_.num_bins()),
      synth_(analysis_.window_len) {
  if (analysis_.num_bins() != config_.num_bins) {
    Fail(ErrorKind::kConfiguration,
         "analysis produces " + std::to_string(analysis_.num_bins()) +
             " bins, model expects " + std::to_string(config_.num_bins));
  }
}

std::vector<float> StreamingEnhancer::Push(std::span<const float> samples) {
  if (flushed_) Fail(ErrorKind::kContract, "push after flush");
  for (float s : samples) {
    if (!std::isfinite(s)) Fail(ErrorKind::kData, "non-finite sample");
  }
  std::vector<float> out;
  const auto window = static_cast<std::size_t>(analysis_.window_len);
  const auto hop = static_cast<std::size_t>(analysis_.hop);
  std::size_t pos = 0;
  while (pos < samples.size()) {
    const std::size_t take =
        std::min(samples.size() - pos, window - input_.size());
    input_.insert(input_.end(), samples.begin() + pos,
                  samples.begin() + pos + take);
    pos += take;
    samples_in_ += static_cast<std::int64_t>(take);
    if (input_.size() == window) {
      AnalyzeBufferedFrame(false, out);
      input_.erase(input_.begin(), input_.begin() + hop);
    }
  }
  return out;
}

std::vector<float> StreamingEnhancer::Flush() {
  if (flushed_) Fail(ErrorKind::kContract, "stream already flushed");
  flushed_ = true;
  std::vector<float> out;
  if (samples_in_ == 0) return out;

  if (static_cast<int>(input_.size()) > analysis_.overlap()) {
    input_.resize(analysis_.window_len, 0.0f);
    AnalyzeBufferedFrame(false, out);
  }
  const std::vector<std::complex<float>> zero(analysis_.num_bins());
  for (int i = 0; i < config_.look_ahead; ++i) {
    RunStep(zero, i == config_.look_ahead - 1, out);
  }
  std::vector<float> produced;
  ola_.Finish(produced);
  Emit(produced, out);
  return out;
}

void StreamingEnhancer::AnalyzeBufferedFrame(bool final_step,
                                             std::vector<float>& out) {
  AnalyzeFrame(std::span<const float>(input_).first(analysis_.window_len),
               analysis_, bins_);
  ++frames_analyzed_;
  RunStep(bins_, final_step, out);
}

void StreamingEnhancer::RunStep(std::span<const std::complex<float>> frame,
                                bool final_step, std::vector<float>& out) {
  lookahead_.emplace_back(frame.begin(), frame.end());
  const std::vector<float> mask = graph_.Step(frame, final_step);
  if (static_cast<int>(lookahead_.size()) <= config_.look_ahead) return;

  CirmDecompressApply(mask, lookahead_.front(), enhanced_);
  lookahead_.pop_front();
  SynthesizeFrame(enhanced_, analysis_, synth_);
  std::vector<float> produced;
  ola_.Add(synth_, produced);
  Emit(produced, out);
}

void StreamingEnhancer::Emit(std::vector<float>& produced,
                             std::vector<float>& out) {
  const auto room = static_cast<std::size_t>(samples_in_ - samples_out_);
  const std::size_t n = std::min(room, produced.size());
  out.insert(out.end(), produced.begin(), produced.begin() + n);
  samples_out_ += static_cast<std::int64_t>(n);
}

}  // namespace ffsn
