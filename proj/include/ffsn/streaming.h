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

#ifndef FFSN_STREAMING_H_
#define FFSN_STREAMING_H_

#include <complex>
#include <cstdint>
#include <deque>
#include <memory>
#include <span>
#include <vector>

#include "ffsn/dsp.h"
#include "ffsn/graph.h"
#include "ffsn/model.h"

namespace ffsn {

// Stateful enhancer for 16 kHz mono audio delivered in arbitrary chunks.
//
// Output is time-aligned with the input. A sample in hop block k is emitted
// once analysis frame k + 1 + look_ahead has been consumed, so at most
// window_len + look_ahead * hop samples are held back. Flush() emits the rest;
// over a session the output length equals the input length, and the output
// matches Istft(ForwardOffline(Stft(input))) sample for sample.
//
// Not thread-safe; independent instances may share weights across threads.
class StreamingEnhancer {
 public:
  StreamingEnhancer(std::shared_ptr<const ModelWeights> weights,
                    const ModelConfig& config,
                    AnalysisConfig analysis = AnalysisConfig{});

  // Throws kData on non-finite samples and kContract after Flush().
  std::vector<float> Push(std::span<const float> samples);
  // Throws kContract if called twice.
  std::vector<float> Flush();

  std::int64_t samples_in() const { return samples_in_; }
  std::int64_t samples_out() const { return samples_out_; }
  std::int64_t frames_analyzed() const { return frames_analyzed_; }
  const FrameGraph& graph() const { return graph_; }

 private:
  void AnalyzeBufferedFrame(bool final_step, std::vector<float>& out);
  void RunStep(std::span<const std::complex<float>> frame, bool final_step,
               std::vector<float>& out);
  void Emit(std::vector<float>& produced, std::vector<float>& out);

  std::shared_ptr<const ModelWeights> weights_;
  ModelConfig config_;
  AnalysisConfig analysis_;
  FrameGraph graph_;
  OverlapAdder ola_;
  std::vector<float> input_;  // window_len - hop history + pending samples
  std::deque<std::vector<std::complex<float>>> lookahead_;
  std::vector<std::complex<float>> bins_;
  std::vector<std::complex<float>> enhanced_;
  std::vector<float> synth_;
  std::int64_t samples_in_ = 0;
  std::int64_t samples_out_ = 0;
  std::int64_t frames_analyzed_ = 0;
  bool flushed_ = false;
};

}  // namespace ffsn

#endif  // FFSN_STREAMING_H_
