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

#include "ffsn/complexity.h"

#include <cstdio>
#include <string>

#include "ffsn/error.h"

namespace ffsn {
namespace {

void AddStack(ArchitecturePreset& preset, const std::string& stack,
              int input_dim, std::span<const int> hidden, int output_dim,
              Rational runs) {
  int in = input_dim;
  for (int h : hidden) {
    preset.layers.push_back({stack, LayerKind::kRecurrent, in, h, runs});
    in = h;
  }
  preset.layers.push_back({stack, LayerKind::kAffine, in, output_dim, runs});
}

std::int64_t LayerParams(const LayerDescriptor& l) {
  return l.kind == LayerKind::kRecurrent
             ? RecurrentLayerParams(l.input_dim, l.output_dim)
             : AffineLayerParams(l.input_dim, l.output_dim);
}

std::int64_t LayerMacs(const LayerDescriptor& l) {
  return l.kind == LayerKind::kRecurrent
             ? RecurrentLayerMacs(l.input_dim, l.output_dim)
             : AffineLayerMacs(l.input_dim, l.output_dim);
}

std::string Format(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

}  // namespace

std::int64_t RecurrentLayerParams(int input_dim, int hidden_dim) {
  const std::int64_t i = input_dim, h = hidden_dim;
  return 4 * (i * h + h * h + 2 * h);
}

std::int64_t AffineLayerParams(int input_dim, int output_dim) {
  const std::int64_t i = input_dim, o = output_dim;
  return i * o + o;
}

std::int64_t RecurrentLayerMacs(int input_dim, int hidden_dim) {
  const std::int64_t i = input_dim, h = hidden_dim;
  return 4 * (i * h + h * h + h) + 3 * h;
}

std::int64_t AffineLayerMacs(int input_dim, int output_dim) {
  return static_cast<std::int64_t>(input_dim) * output_dim;
}

ArchitecturePreset FastFullSubNetPreset(const ModelConfig& c) {
  c.Validate();
  ArchitecturePreset p;
  p.name = "fast_fullsubnet_m" + c.factor.ToString();
  p.frame_rate = c.frame_rate;
  AddStack(p, "l2m", c.num_mel, c.l2m_hidden, c.num_mel, {1, 1});
  const Rational sub_runs = c.factor.infinite()
                                ? Rational{0, 1}
                                : Rational{c.num_mel, c.factor.value()};
  AddStack(p, "sub", c.subband_width(), c.sub_hidden, 1, sub_runs);
  AddStack(p, "m2l", c.m2l_input_width(), c.m2l_hidden, c.mask_width(),
           {1, 1});
  return p;
}

ArchitecturePreset FastFullSubNetPreset(DownsampleFactor factor) {
  ModelConfig c;
  c.factor = factor;
  return FastFullSubNetPreset(c);
}

ArchitecturePreset FullSubNetPreset() {
  ArchitecturePreset p;
  p.name = "fullsubnet";
  const int fb[] = {512, 512};
  const int sb[] = {384, 384};
  AddStack(p, "fullband", 257, fb, 257, {1, 1});
  AddStack(p, "subband", 32, sb, 2, {257, 1});
  return p;
}

ArchitecturePreset FullBandPreset() {
  ArchitecturePreset p;
  p.name = "fullband";
  const int h[] = {512, 512, 512, 512};
  AddStack(p, "fullband", 257, h, 514, {1, 1});
  return p;
}

ArchitecturePreset PresetByName(std::string_view name) {
  if (name == "fullsubnet") return FullSubNetPreset();
  if (name == "fullband") return FullBandPreset();
  constexpr std::string_view kFast = "fast_fullsubnet";
  if (name.starts_with(kFast)) {
    std::string_view rest = name.substr(kFast.size());
    if (rest.empty()) {
      auto p = FastFullSubNetPreset(DownsampleFactor::Finite(1));
      p.name = std::string(name);
      return p;
    }
    if (rest.starts_with("_m") && rest.size() > 2) {
      try {
        return FastFullSubNetPreset(DownsampleFactor::Parse(rest.substr(2)));
      } catch (const Error&) {
      }
    }
  }
  Fail(ErrorKind::kUsage, "unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> StandardPresetNames() {
  return {"fast_fullsubnet_m1", "fast_fullsubnet_m2", "fast_fullsubnet_m4",
          "fast_fullsubnet_m8", "fast_fullsubnet_minf", "fullsubnet",
          "fullband"};
}

std::int64_t CountParams(const ArchitecturePreset& preset) {
  std::int64_t total = 0;
  for (const LayerDescriptor& l : preset.layers) {
    if (l.executions_per_frame.num != 0) total += LayerParams(l);
  }
  return total;
}

CostReport CountMacs(const ArchitecturePreset& preset) {
  CostReport r;
  r.preset = preset.name;
  for (const LayerDescriptor& l : preset.layers) {
    if (r.stacks.empty() || r.stacks.back().stack != l.stack) {
      r.stacks.push_back({l.stack, 0, 0.0});
    }
    StackCost& s = r.stacks.back();
    if (l.executions_per_frame.num == 0) continue;
    s.params += LayerParams(l);
    s.macs_per_frame += static_cast<double>(LayerMacs(l) *
                                            l.executions_per_frame.num) /
                        static_cast<double>(l.executions_per_frame.den);
  }
  for (const StackCost& s : r.stacks) {
    r.params += s.params;
    r.macs_per_frame += s.macs_per_frame;
  }
  r.macs_per_second = r.macs_per_frame * preset.frame_rate;
  return r;
}

std::string Compare(std::span<const CostReport> reports, TableFormat format) {
  const double base = CountMacs(FullSubNetPreset()).macs_per_second;
  std::string out;
  if (format == TableFormat::kCsv) {
    out = "preset,params,params_m,macs_per_frame,macs_g_per_s,macs_ratio\n";
    for (const CostReport& r : reports) {
      out += Format("%s,%lld,%.2f,%.1f,%.4f,%.4f\n", r.preset.c_str(),
                    static_cast<long long>(r.params), r.params / 1e6,
                    r.macs_per_frame, r.macs_per_second / 1e9,
                    r.macs_per_second / base);
    }
    return out;
  }
  out = Format("%-22s %12s %10s %12s %10s\n", "preset", "params", "params(M)",
               "MACs(G/s)", "vs full");
  for (const CostReport& r : reports) {
    out += Format("%-22s %12lld %10.2f %12.3f %10.4f\n", r.preset.c_str(),
                  static_cast<long long>(r.params), r.params / 1e6,
                  r.macs_per_second / 1e9, r.macs_per_second / base);
  }
  return out;
}

}  // namespace ffsn
