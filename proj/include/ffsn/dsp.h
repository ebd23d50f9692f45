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
// Short-time Fourier analysis and weighted overlap-add synthesis.
//
// Framing convention: the signal is left-padded with window_len - hop zeros,
// so frame t covers original samples [t*hop - (window_len - hop), t*hop + hop)
// and never looks past sample (t + 1) * hop - 1. A clip of n samples yields
// ceil(n / hop) frames; the final partial frame is zero-padded.

#ifndef FFSN_DSP_H_
#define FFSN_DSP_H_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ffsn {

inline constexpr int kSampleRate = 16000;

struct AudioClip {
  std::vector<float> samples;
  int sample_rate = kSampleRate;
};

// Periodic (DFT-even) Hann window: w[n] = 0.5 * (1 - cos(2*pi*n/len)).
std::vector<float> PeriodicHann(int len);

struct AnalysisConfig {
  int window_len = 512;
  int hop = 256;
  std::vector<float> window = PeriodicHann(512);

  static AnalysisConfig Make(int window_len, int hop);

  int num_bins() const { return window_len / 2 + 1; }
  int overlap() const { return window_len - hop; }
  // Throws kConfiguration unless hop divides window_len and the window is the
  // matching periodic Hann window.
  void Validate() const;
};

// T x F complex matrix, row-major by frame.
class ComplexSpectrogram {
 public:
  ComplexSpectrogram() = default;
  ComplexSpectrogram(int num_frames, int num_bins);

  int num_frames() const { return num_frames_; }
  int num_bins() const { return num_bins_; }

  std::span<std::complex<float>> frame(int t) {
    return {data_.data() + static_cast<std::size_t>(t) * num_bins_,
            static_cast<std::size_t>(num_bins_)};
  }
  std::span<const std::complex<float>> frame(int t) const {
    return {data_.data() + static_cast<std::size_t>(t) * num_bins_,
            static_cast<std::size_t>(num_bins_)};
  }
  std::complex<float>& at(int t, int f) { return frame(t)[f]; }
  const std::complex<float>& at(int t, int f) const { return frame(t)[f]; }

  const std::vector<std::complex<float>>& data() const { return data_; }

 private:
  int num_frames_ = 0;
  int num_bins_ = 0;
  std::vector<std::complex<float>> data_;
};

// Windowed real FFT of one frame of window_len samples.
void AnalyzeFrame(std::span<const float> frame, const AnalysisConfig& config,
                  std::span<std::complex<float>> bins);

// Inverse real FFT of one frame followed by the synthesis window.
void SynthesizeFrame(std::span<const std::complex<float>> bins,
                     const AnalysisConfig& config, std::span<float> frame);

ComplexSpectrogram Stft(const AudioClip& clip, const AnalysisConfig& config);

AudioClip Istft(const ComplexSpectrogram& spec, const AnalysisConfig& config,
                std::size_t out_len);

// Incremental weighted overlap-add. Frames are added in order; after frame t
// the hop samples of block t - (window_len/hop - 1) are final and emitted.
// Offline Istft and the streaming engine both go through this class, so
// their outputs agree bit for bit.
class OverlapAdder {
 public:
  // Samples whose squared-window sum falls below this are scaled by the floor
  // instead (only the tail block of a clip is covered by a single frame).
  static constexpr float kNormalizationFloor = 1e-3f;

  explicit OverlapAdder(const AnalysisConfig& config);

  // `frame` is a synthesized (already windowed) frame. Appends finalized
  // samples to `out`.
  void Add(std::span<const float> frame, std::vector<float>& out);
  // Emits the blocks still waiting for later frames.
  void Finish(std::vector<float>& out);

 private:
  void EmitBlock(std::vector<float>& out);

  int window_len_;
  int hop_;
  std::vector<float> window_sq_;
  std::vector<float> numerator_;
  std::vector<float> denominator_;
  long long next_block_;
};

}  // namespace ffsn

#endif  // FFSN_DSP_H_
