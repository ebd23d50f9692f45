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

#include "ffsn/model.h"

#include <charconv>
#include <cmath>
#include <random>

#include "ffsn/dsp.h"
#include "ffsn/error.h"

namespace ffsn {
namespace {

void FillUniform(std::vector<float>& v, float bound, std::mt19937_64& rng) {
  std::uniform_real_distribution<float> dist(-bound, bound);
  for (float& x : v) x = dist(rng);
}

void Randomize(RecurrentStack& stack, std::mt19937_64& rng) {
  for (LstmLayerParams& layer : stack.lstm) {
    const float bound = 1.0f / std::sqrt(static_cast<float>(layer.hidden_dim));
    FillUniform(layer.w_input, bound, rng);
    FillUniform(layer.w_recurrent, bound, rng);
    FillUniform(layer.bias_input, bound, rng);
    FillUniform(layer.bias_recurrent, bound, rng);
  }
  const float bound =
      1.0f / std::sqrt(static_cast<float>(stack.affine.input_dim));
  FillUniform(stack.affine.weight, bound, rng);
  FillUniform(stack.affine.bias, bound, rng);
}

void CheckStack(const RecurrentStack& stack, std::string_view name,
                int input_dim, std::array<int, 2> hidden, int output_dim) {
  const bool ok = stack.lstm[0].input_dim == input_dim &&
                  stack.lstm[0].hidden_dim == hidden[0] &&
                  stack.lstm[1].input_dim == hidden[0] &&
                  stack.lstm[1].hidden_dim == hidden[1] &&
                  stack.affine.input_dim == hidden[1] &&
                  stack.affine.output_dim == output_dim;
  if (!ok) {
    Fail(ErrorKind::kConfiguration,
         std::string(name) + " stack shape disagrees with the model config");
  }
  try {
    stack.lstm[0].Validate();
    stack.lstm[1].Validate();
    stack.affine.Validate();
  } catch (const Error& e) {
    Fail(ErrorKind::kConfiguration, std::string(name) + ": " + e.what());
  }
}

}  // namespace

DownsampleFactor DownsampleFactor::Finite(int m) {
  if (m < 1) {
    Fail(ErrorKind::kConfiguration,
         "down-sampling factor must be >= 1, got " + std::to_string(m));
  }
  return DownsampleFactor(m);
}

DownsampleFactor DownsampleFactor::Parse(std::string_view text) {
  if (text == "inf" || text == "+inf" || text == "infinity" || text == "INF") {
    return Infinite();
  }
  int m = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), m);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    Fail(ErrorKind::kUsage,
         "down-sampling factor must be a positive integer or 'inf', got '" +
             std::string(text) + "'");
  }
  return Finite(m);
}

int DownsampleFactor::value() const {
  if (infinite()) Fail(ErrorKind::kContract, "infinite down-sampling factor");
  return m_;
}

std::string DownsampleFactor::ToString() const {
  return infinite() ? "inf" : std::to_string(m_);
}

void ModelConfig::Validate() const {
  const bool positive = num_bins > 0 && num_mel > 0 && neighbors >= 0 &&
                        l2m_hidden[0] > 0 && l2m_hidden[1] > 0 &&
                        sub_hidden[0] > 0 && sub_hidden[1] > 0 &&
                        m2l_hidden[0] > 0 && m2l_hidden[1] > 0 &&
                        frame_rate > 0.0;
  if (!positive) Fail(ErrorKind::kConfiguration, "model sizes must be positive");
  if (look_ahead < 0) Fail(ErrorKind::kConfiguration, "negative look-ahead");
  if (neighbors >= num_mel) {
    Fail(ErrorKind::kConfiguration,
         "neighbor count must be smaller than the number of mel bands");
  }
}

RecurrentStack RecurrentStack::Zeros(int input_dim, std::array<int, 2> hidden,
                                     int output_dim) {
  return {{LstmLayerParams::Zeros(input_dim, hidden[0]),
           LstmLayerParams::Zeros(hidden[0], hidden[1])},
          AffineParams::Zeros(hidden[1], output_dim)};
}

std::size_t RecurrentStack::ParameterCount() const {
  return lstm[0].ParameterCount() + lstm[1].ParameterCount() +
         affine.ParameterCount();
}

std::size_t ModelWeights::ParameterCount() const {
  return l2m.ParameterCount() + (sub ? sub->ParameterCount() : 0) +
         m2l.ParameterCount();
}

ModelWeights ModelWeights::Zeros(const ModelConfig& config) {
  config.Validate();
  ModelWeights w;
  w.mel = MelFilterbank::Build(config.num_bins, config.num_mel, kSampleRate,
                               0.0, kSampleRate / 2.0);
  w.l2m = RecurrentStack::Zeros(config.num_mel, config.l2m_hidden,
                                config.num_mel);
  if (config.sub_band_present()) {
    w.sub = RecurrentStack::Zeros(config.subband_width(), config.sub_hidden, 1);
  }
  w.m2l = RecurrentStack::Zeros(config.m2l_input_width(), config.m2l_hidden,
                                config.mask_width());
  return w;
}

ModelWeights ModelWeights::Random(const ModelConfig& config,
                                  std::uint64_t seed) {
  ModelWeights w = Zeros(config);
  std::mt19937_64 rng(seed);
  Randomize(w.l2m, rng);
  if (w.sub) Randomize(*w.sub, rng);
  Randomize(w.m2l, rng);
  return w;
}

void ModelWeights::CheckConsistent(const ModelConfig& config) const {
  config.Validate();
  if (mel.num_mel() != config.num_mel || mel.num_bins() != config.num_bins) {
    Fail(ErrorKind::kConfiguration, "mel filterbank shape disagrees with config");
  }
  CheckStack(l2m, "l2m", config.num_mel, config.l2m_hidden, config.num_mel);
  if (config.sub_band_present() != sub.has_value()) {
    Fail(ErrorKind::kConfiguration,
         config.sub_band_present()
             ? "finite down-sampling factor needs a sub-band model, but the "
               "weights have none"
             : "infinite down-sampling factor needs weights without a "
               "sub-band model");
  }
  if (sub) {
    CheckStack(*sub, "sub", config.subband_width(), config.sub_hidden, 1);
  }
  CheckStack(m2l, "m2l", config.m2l_input_width(), config.m2l_hidden,
             config.mask_width());
}

}  // namespace ffsn
