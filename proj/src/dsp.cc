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

#include "ffsn/dsp.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "ffsn/error.h"

namespace ffsn {
namespace {

// FFTW planning is not thread-safe; execution with the new-array interface
// is. Plans are created once per size under a lock and never destroyed.
struct FftPlans {
  fftw_plan forward;
  fftw_plan inverse;
};

const FftPlans& PlansFor(int n) {
  static std::mutex mu;
  static std::map<int, FftPlans> plans;
  std::lock_guard<std::mutex> lock(mu);
  auto it = plans.find(n);
  if (it != plans.end()) return it->second;
  double* real = fftw_alloc_real(n);
  fftw_complex* spec = fftw_alloc_complex(n / 2 + 1);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  FftPlans p{fftw_plan_dft_r2c_1d(n, real, spec, flags),
             fftw_plan_dft_c2r_1d(n, spec, real, flags)};
  fftw_free(real);
  fftw_free(spec);
  return plans.emplace(n, p).first->second;
}

}  // namespace

std::vector<float> PeriodicHann(int len) {
  std::vector<float> w(static_cast<std::size_t>(std::max(len, 0)));
  for (int n = 0; n < len; ++n) {
    w[n] = static_cast<float>(
        0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * n / len)));
  }
  return w;
}

AnalysisConfig AnalysisConfig::Make(int window_len, int hop) {
  AnalysisConfig c;
  c.window_len = window_len;
  c.hop = hop;
  c.window = PeriodicHann(window_len);
  c.Validate();
  return c;
}

void AnalysisConfig::Validate() const {
  if (window_len <= 0 || hop <= 0 || window_len % 2 != 0) {
    Fail(ErrorKind::kConfiguration, "window_len must be positive and even");
  }
  if (window_len % hop != 0) {
    Fail(ErrorKind::kConfiguration, "hop must divide window_len");
  }
  if (static_cast<int>(window.size()) != window_len) {
    Fail(ErrorKind::kConfiguration, "window length differs from window_len");
  }
  const std::vector<float> expected = PeriodicHann(window_len);
  if (!std::equal(window.begin(), window.end(), expected.begin())) {
    Fail(ErrorKind::kConfiguration, "window must be the periodic Hann window");
  }
}

ComplexSpectrogram::ComplexSpectrogram(int num_frames, int num_bins)
    : num_frames_(num_frames),
      num_bins_(num_bins),
      data_(static_cast<std::size_t>(num_frames) * num_bins) {}

void AnalyzeFrame(std::span<const float> frame, const AnalysisConfig& config,
                  std::span<std::complex<float>> bins) {
  const int n = config.window_len;
  if (static_cast<int>(frame.size()) != n ||
      static_cast<int>(bins.size()) != config.num_bins()) {
    Fail(ErrorKind::kShape, "AnalyzeFrame: frame or bin count mismatch");
  }
  std::vector<double> in(n);
  for (int i = 0; i < n; ++i) {
    in[i] = static_cast<double>(frame[i]) * config.window[i];
  }
  std::vector<std::complex<double>> out(config.num_bins());
  fftw_execute_dft_r2c(PlansFor(n).forward, in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  for (int f = 0; f < config.num_bins(); ++f) {
    bins[f] = std::complex<float>(static_cast<float>(out[f].real()),
                                  static_cast<float>(out[f].imag()));
  }
}

void SynthesizeFrame(std::span<const std::complex<float>> bins,
                     const AnalysisConfig& config, std::span<float> frame) {
  const int n = config.window_len;
  if (static_cast<int>(frame.size()) != n ||
      static_cast<int>(bins.size()) != config.num_bins()) {
    Fail(ErrorKind::kShape, "SynthesizeFrame: frame or bin count mismatch");
  }
  std::vector<std::complex<double>> in(bins.begin(), bins.end());
  std::vector<double> out(n);
  fftw_execute_dft_c2r(PlansFor(n).inverse,
                       reinterpret_cast<fftw_complex*>(in.data()), out.data());
  const double scale = 1.0 / n;
  for (int i = 0; i < n; ++i) {
    frame[i] = static_cast<float>(out[i] * scale * config.window[i]);
  }
}

ComplexSpectrogram Stft(const AudioClip& clip, const AnalysisConfig& config) {
  if (clip.sample_rate != kSampleRate) {
    Fail(ErrorKind::kConfiguration,
         "sample rate must be 16000 Hz, got " + std::to_string(clip.sample_rate));
  }
  if (clip.samples.empty()) Fail(ErrorKind::kData, "empty clip");
  for (float s : clip.samples) {
    if (!std::isfinite(s)) Fail(ErrorKind::kData, "non-finite sample");
  }
  const std::size_t len = clip.samples.size();
  const int hop = config.hop;
  const int num_frames = static_cast<int>((len + hop - 1) / hop);
  const std::size_t pad = config.overlap();

  std::vector<float> padded(pad + static_cast<std::size_t>(num_frames) * hop,
                            0.0f);
  std::copy(clip.samples.begin(), clip.samples.end(), padded.begin() + pad);

  ComplexSpectrogram spec(num_frames, config.num_bins());
  for (int t = 0; t < num_frames; ++t) {
    AnalyzeFrame(std::span<const float>(padded).subspan(
                     static_cast<std::size_t>(t) * hop, config.window_len),
                 config, spec.frame(t));
  }
  return spec;
}

AudioClip Istft(const ComplexSpectrogram& spec, const AnalysisConfig& config,
                std::size_t out_len) {
  if (spec.num_frames() > 0 && spec.num_bins() != config.num_bins()) {
    Fail(ErrorKind::kShape, "Istft: spectrogram has " +
                                std::to_string(spec.num_bins()) +
                                " bins, config expects " +
                                std::to_string(config.num_bins()));
  }
  AudioClip clip;
  clip.samples.reserve(static_cast<std::size_t>(spec.num_frames()) *
                       config.hop);
  OverlapAdder ola(config);
  std::vector<float> frame(config.window_len);
  for (int t = 0; t < spec.num_frames(); ++t) {
    SynthesizeFrame(spec.frame(t), config, frame);
    ola.Add(frame, clip.samples);
  }
  ola.Finish(clip.samples);
  clip.samples.resize(out_len, 0.0f);
  return clip;
}

OverlapAdder::OverlapAdder(const AnalysisConfig& config)
    : window_len_(config.window_len),
      hop_(config.hop),
      window_sq_(config.window_len),
      numerator_(config.window_len, 0.0f),
      denominator_(config.window_len, 0.0f),
      next_block_(-(config.window_len / config.hop - 1)) {
  for (int i = 0; i < window_len_; ++i) {
    window_sq_[i] = config.window[i] * config.window[i];
  }
}

void OverlapAdder::Add(std::span<const float> frame, std::vector<float>& out) {
  if (static_cast<int>(frame.size()) != window_len_) {
    Fail(ErrorKind::kShape, "OverlapAdder: frame length mismatch");
  }
  for (int i = 0; i < window_len_; ++i) {
    numerator_[i] += frame[i];
    denominator_[i] += window_sq_[i];
  }
  EmitBlock(out);
}

void OverlapAdder::Finish(std::vector<float>& out) {
  for (int b = 0; b < window_len_ / hop_ - 1; ++b) EmitBlock(out);
}

void OverlapAdder::EmitBlock(std::vector<float>& out) {
  if (next_block_ >= 0) {
    for (int i = 0; i < hop_; ++i) {
      out.push_back(numerator_[i] /
                    std::max(denominator_[i], kNormalizationFloor));
    }
  }
  ++next_block_;
  std::copy(numerator_.begin() + hop_, numerator_.end(), numerator_.begin());
  std::copy(denominator_.begin() + hop_, denominator_.end(),
            denominator_.begin());
  std::fill(numerator_.end() - hop_, numerator_.end(), 0.0f);
  std::fill(denominator_.end() - hop_, denominator_.end(), 0.0f);
}

}  // namespace ffsn
