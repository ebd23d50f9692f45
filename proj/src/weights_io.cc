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

#include "ffsn/weights_io.h"

#include <array>
#include <cmath>
#include <map>
#include <string_view>
#include <utility>

#include "ffsn/error.h"

namespace ffsn {
namespace {

constexpr std::string_view kMagic = "FFSN";
constexpr std::uint32_t kMaxDim = 1u << 16;
constexpr std::uint32_t kMaxLookAhead = 1024;
constexpr std::uint32_t kMaxTensors = 64;

using Shape = std::vector<std::uint32_t>;

void AddStackTensors(const RecurrentStack& stack, const std::string& prefix,
                     std::vector<NamedTensor>& out) {
  for (int l = 0; l < 2; ++l) {
    const LstmLayerParams& p = stack.lstm[l];
    const std::string base = prefix + ".lstm" + std::to_string(l) + ".";
    const auto gates = static_cast<std::uint32_t>(4 * p.hidden_dim);
    out.push_back({base + "w_input",
                   {gates, static_cast<std::uint32_t>(p.input_dim)},
                   p.w_input});
    out.push_back({base + "w_recurrent",
                   {gates, static_cast<std::uint32_t>(p.hidden_dim)},
                   p.w_recurrent});
    out.push_back({base + "bias_input", {gates}, p.bias_input});
    out.push_back({base + "bias_recurrent", {gates}, p.bias_recurrent});
  }
  out.push_back({prefix + ".affine.weight",
                 {static_cast<std::uint32_t>(stack.affine.output_dim),
                  static_cast<std::uint32_t>(stack.affine.input_dim)},
                 stack.affine.weight});
  out.push_back({prefix + ".affine.bias",
                 {static_cast<std::uint32_t>(stack.affine.output_dim)},
                 stack.affine.bias});
}

void AddStackShapes(const std::string& prefix, int input_dim,
                    std::array<int, 2> hidden, int output_dim,
                    std::vector<std::pair<std::string, Shape>>& out) {
  int in = input_dim;
  for (int l = 0; l < 2; ++l) {
    const std::string base = prefix + ".lstm" + std::to_string(l) + ".";
    const auto h = static_cast<std::uint32_t>(hidden[l]);
    out.emplace_back(base + "w_input", Shape{4 * h, static_cast<std::uint32_t>(in)});
    out.emplace_back(base + "w_recurrent", Shape{4 * h, h});
    out.emplace_back(base + "bias_input", Shape{4 * h});
    out.emplace_back(base + "bias_recurrent", Shape{4 * h});
    in = hidden[l];
  }
  out.emplace_back(prefix + ".affine.weight",
                   Shape{static_cast<std::uint32_t>(output_dim),
                         static_cast<std::uint32_t>(hidden[1])});
  out.emplace_back(prefix + ".affine.bias",
                   Shape{static_cast<std::uint32_t>(output_dim)});
}

std::vector<std::pair<std::string, Shape>> ExpectedShapes(
    const ModelConfig& c) {
  std::vector<std::pair<std::string, Shape>> shapes;
  shapes.emplace_back("mel.filterbank",
                      Shape{static_cast<std::uint32_t>(c.num_mel),
                            static_cast<std::uint32_t>(c.num_bins)});
  AddStackShapes("l2m", c.num_mel, c.l2m_hidden, c.num_mel, shapes);
  if (c.sub_band_present()) {
    AddStackShapes("sub", c.subband_width(), c.sub_hidden, 1, shapes);
  }
  AddStackShapes("m2l", c.m2l_input_width(), c.m2l_hidden, c.mask_width(),
                 shapes);
  return shapes;
}

bool IsCanonicalName(std::string_view name) {
  static const std::vector<std::string> names = [] {
    ModelConfig c;
    std::vector<std::string> v;
    for (auto& [n, s] : ExpectedShapes(c)) v.push_back(n);
    return v;
  }();
  for (const std::string& n : names) {
    if (n == name) return true;
  }
  return false;
}

std::string ShapeString(const Shape& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += "x";
    out += std::to_string(s[i]);
  }
  return out + "]";
}

LstmLayerParams TakeLstm(std::map<std::string, NamedTensor>& t,
                         const std::string& base, int input_dim, int hidden) {
  LstmLayerParams p;
  p.input_dim = input_dim;
  p.hidden_dim = hidden;
  p.w_input = std::move(t.at(base + "w_input").values);
  p.w_recurrent = std::move(t.at(base + "w_recurrent").values);
  p.bias_input = std::move(t.at(base + "bias_input").values);
  p.bias_recurrent = std::move(t.at(base + "bias_recurrent").values);
  return p;
}

RecurrentStack TakeStack(std::map<std::string, NamedTensor>& t,
                         const std::string& prefix, int input_dim,
                         std::array<int, 2> hidden, int output_dim) {
  RecurrentStack s;
  s.lstm[0] = TakeLstm(t, prefix + ".lstm0.", input_dim, hidden[0]);
  s.lstm[1] = TakeLstm(t, prefix + ".lstm1.", hidden[0], hidden[1]);
  s.affine.input_dim = hidden[1];
  s.affine.output_dim = output_dim;
  s.affine.weight = std::move(t.at(prefix + ".affine.weight").values);
  s.affine.bias = std::move(t.at(prefix + ".affine.bias").values);
  return s;
}

ModelConfig ReadConfigBlock(ByteReader& r) {
  std::array<std::uint32_t, 11> v{};
  for (auto& x : v) x = r.U32();
  for (int i = 0; i < 10; ++i) {
    if (i == 2 || i == 3) continue;  // N and tau may be zero
    if (v[i] == 0 || v[i] > kMaxDim) {
      Fail(ErrorKind::kValidation,
           "config field " + std::to_string(i) + " out of range: " +
               std::to_string(v[i]));
    }
  }
  if (v[3] > kMaxLookAhead) {
    Fail(ErrorKind::kValidation, "look-ahead out of range");
  }
  if (v[10] > 1) {
    Fail(ErrorKind::kValidation, "sub_band_present flag must be 0 or 1");
  }
  ModelConfig c;
  c.num_bins = static_cast<int>(v[0]);
  c.num_mel = static_cast<int>(v[1]);
  c.neighbors = static_cast<int>(v[2]);
  c.look_ahead = static_cast<int>(v[3]);
  c.l2m_hidden = {static_cast<int>(v[4]), static_cast<int>(v[5])};
  c.sub_hidden = {static_cast<int>(v[6]), static_cast<int>(v[7])};
  c.m2l_hidden = {static_cast<int>(v[8]), static_cast<int>(v[9])};
  c.factor = v[10] == 1 ? DownsampleFactor::Finite(2)
                        : DownsampleFactor::Infinite();
  if (c.neighbors >= c.num_mel) {
    Fail(ErrorKind::kValidation, "neighbor count must be below the band count");
  }
  return c;
}

}  // namespace

std::vector<NamedTensor> WeightTensors(const ModelWeights& weights) {
  std::vector<NamedTensor> out;
  out.push_back({"mel.filterbank",
                 {static_cast<std::uint32_t>(weights.mel.num_mel()),
                  static_cast<std::uint32_t>(weights.mel.num_bins())},
                 weights.mel.weights()});
  AddStackTensors(weights.l2m, "l2m", out);
  if (weights.sub) AddStackTensors(*weights.sub, "sub", out);
  AddStackTensors(weights.m2l, "m2l", out);
  return out;
}

std::vector<std::uint8_t> EncodeWeights(const ModelWeights& weights,
                                        const ModelConfig& config) {
  weights.CheckConsistent(config);
  ByteWriter w;
  w.Raw(kMagic);
  w.U32(kWeightFormatVersion);
  for (int v : {config.num_bins, config.num_mel, config.neighbors,
                config.look_ahead, config.l2m_hidden[0], config.l2m_hidden[1],
                config.sub_hidden[0], config.sub_hidden[1],
                config.m2l_hidden[0], config.m2l_hidden[1]}) {
    w.U32(static_cast<std::uint32_t>(v));
  }
  w.U32(config.sub_band_present() ? 1 : 0);
  const std::vector<NamedTensor> tensors = WeightTensors(weights);
  w.U32(static_cast<std::uint32_t>(tensors.size()));
  for (const NamedTensor& t : tensors) w.Tensor(t);
  w.Crc();
  return w.Release();
}

LoadedModel DecodeWeights(std::span<const std::uint8_t> bytes) {
  ByteReader header(bytes);
  if (header.Raw(4) != kMagic) {
    Fail(ErrorKind::kFormat, "not a weight file (bad magic)");
  }
  const std::uint32_t version = header.U32();
  if (version != kWeightFormatVersion) {
    Fail(ErrorKind::kFormat,
         "unsupported weight format version " + std::to_string(version));
  }
  ByteReader r(VerifyCrcTrailer(bytes));
  r.Raw(8);
  LoadedModel loaded;
  loaded.config = ReadConfigBlock(r);

  const std::uint32_t count = r.U32();
  if (count > kMaxTensors) {
    Fail(ErrorKind::kFormat, "tensor count " + std::to_string(count) +
                                 " exceeds the limit");
  }
  std::map<std::string, NamedTensor> tensors;
  for (std::uint32_t i = 0; i < count; ++i) {
    NamedTensor t = r.Tensor();
    if (!IsCanonicalName(t.name)) {
      Fail(ErrorKind::kValidation, "unknown tensor '" + t.name + "'");
    }
    const std::string name = t.name;
    if (!tensors.emplace(name, std::move(t)).second) {
      Fail(ErrorKind::kValidation, "duplicate tensor '" + name + "'");
    }
  }
  if (r.remaining() != 0) {
    Fail(ErrorKind::kFormat, "trailing bytes after the tensor table");
  }

  const ModelConfig& c = loaded.config;
  const auto expected = ExpectedShapes(c);
  if (tensors.size() != expected.size()) {
    for (const auto& [name, t] : tensors) {
      bool wanted = false;
      for (const auto& e : expected) wanted = wanted || e.first == name;
      if (!wanted) {
        Fail(ErrorKind::kValidation,
             "tensor '" + name + "' not expected for this config");
      }
    }
  }
  for (const auto& [name, shape] : expected) {
    auto it = tensors.find(name);
    if (it == tensors.end()) {
      Fail(ErrorKind::kValidation, "missing tensor '" + name + "'");
    }
    if (it->second.dims != shape) {
      Fail(ErrorKind::kValidation, "tensor '" + name + "' has shape " +
                                       ShapeString(it->second.dims) +
                                       ", config requires " +
                                       ShapeString(shape));
    }
    for (float v : it->second.values) {
      if (!std::isfinite(v)) {
        Fail(ErrorKind::kValidation, "tensor '" + name + "' has non-finite values");
      }
    }
  }

  ModelWeights& w = loaded.weights;
  w.mel = MelFilterbank::FromMatrix(
      c.num_mel, c.num_bins, std::move(tensors.at("mel.filterbank").values));
  w.l2m = TakeStack(tensors, "l2m", c.num_mel, c.l2m_hidden, c.num_mel);
  if (c.sub_band_present()) {
    w.sub = TakeStack(tensors, "sub", c.subband_width(), c.sub_hidden, 1);
  }
  w.m2l = TakeStack(tensors, "m2l", c.m2l_input_width(), c.m2l_hidden,
                    c.mask_width());
  try {
    w.CheckConsistent(c);
  } catch (const Error& e) {
    Fail(ErrorKind::kValidation, e.what());
  }
  return loaded;
}

void SaveWeights(const ModelWeights& weights, const ModelConfig& config,
                 const std::string& path) {
  WriteFileBytes(path, EncodeWeights(weights, config));
}

LoadedModel LoadWeights(const std::string& path) {
  return DecodeWeights(ReadFileBytes(path));
}

}  // namespace ffsn
