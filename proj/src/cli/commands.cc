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

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <optional>
#include <span>

#include "CLI11.hpp"
#include "ffsn/cli.h"
#include "ffsn/complexity.h"
#include "ffsn/dsp.h"
#include "ffsn/graph.h"
#include "ffsn/metrics.h"
#include "ffsn/rtf.h"
#include "ffsn/streaming.h"
#include "ffsn/tensor_io.h"
#include "ffsn/wav_io.h"
#include "ffsn/weights_io.h"

namespace ffsn {
namespace {

struct ModelChoice {
  std::string weights;
  std::string m;
};

std::string WeightsPath(const ModelChoice& choice) {
  if (!choice.weights.empty()) return choice.weights;
  if (const char* env = std::getenv("FFSN_WEIGHTS"); env && *env) return env;
  Fail(ErrorKind::kUsage, "no weight file given (--weights or FFSN_WEIGHTS)");
}

LoadedModel LoadModel(const ModelChoice& choice) {
  LoadedModel loaded = LoadWeights(WeightsPath(choice));
  if (choice.m.empty()) return loaded;
  const DownsampleFactor factor = DownsampleFactor::Parse(choice.m);
  const bool has_sub = loaded.config.sub_band_present();
  if (!factor.infinite() && !has_sub) {
    Fail(ErrorKind::kConfiguration,
         "--m " + choice.m + " needs a sub-band model; the weight file has none");
  }
  if (factor.infinite() && has_sub) {
    Fail(ErrorKind::kConfiguration,
         "--m inf needs a weight file without a sub-band model");
  }
  loaded.config.factor = factor;
  return loaded;
}

void AddModelOptions(CLI::App* cmd, ModelChoice& choice) {
  cmd->add_option("--weights", choice.weights,
                  "weight file (default: $FFSN_WEIGHTS)");
  cmd->add_option("--m", choice.m,
                  "down-sampling factor: positive integer or inf");
}

std::vector<float> EnhanceStream(std::shared_ptr<const ModelWeights> weights,
                                 const ModelConfig& config,
                                 std::span<const float> x, int chunk) {
  StreamingEnhancer engine(std::move(weights), config);
  std::vector<float> y;
  y.reserve(x.size());
  while (!x.empty()) {
    const std::size_t take = std::min<std::size_t>(chunk, x.size());
    const std::vector<float> part = engine.Push(x.first(take));
    y.insert(y.end(), part.begin(), part.end());
    x = x.subspan(take);
  }
  const std::vector<float> tail = engine.Flush();
  y.insert(y.end(), tail.begin(), tail.end());
  return y;
}

std::vector<float> EnhanceOffline(const ModelWeights& weights,
                                  const ModelConfig& config,
                                  const AudioClip& clip) {
  if (clip.samples.empty()) return {};
  const AnalysisConfig analysis;
  const ComplexSpectrogram noisy = Stft(clip, analysis);
  const ComplexSpectrogram enhanced = ForwardOffline(weights, config, noisy);
  return Istft(enhanced, analysis, static_cast<int>(clip.samples.size())).samples;
}

NamedTensor StageTensor(const std::string& stage,
                        const std::vector<StepTrace>& traces) {
  NamedTensor t;
  t.name = stage;
  std::size_t width = 0;
  for (const StepTrace& s : traces) {
    const std::vector<float>& v = stage == "mel"   ? s.mel
                                  : stage == "l2m" ? s.embedding
                                  : stage == "sub" ? s.subband
                                                   : s.mask;
    width = v.size();
    t.values.insert(t.values.end(), v.begin(), v.end());
  }
  t.dims = {static_cast<std::uint32_t>(traces.size()),
            static_cast<std::uint32_t>(width)};
  return t;
}

std::string FormatDb(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage:
      return kExitUsage;
    case ErrorKind::kFormat:
      return kExitFormat;
    case ErrorKind::kValidation:
      return kExitValidation;
    case ErrorKind::kConfiguration:
      return kExitConfiguration;
    case ErrorKind::kIo:
      return kExitIo;
    case ErrorKind::kUndefinedMetric:
      return kExitUndefinedMetric;
    case ErrorKind::kData:
    case ErrorKind::kShape:
    case ErrorKind::kContract:
      return kExitData;
  }
  return kExitData;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app("Fast FullSubNet streaming speech enhancement", "ffsn");
  app.require_subcommand(1);

  // enhance
  ModelChoice enhance_model;
  std::string enhance_in, enhance_out, mode = "stream";
  int chunk = 256;
  CLI::App* enhance = app.add_subcommand("enhance", "enhance a WAV file");
  enhance->add_option("in", enhance_in, "noisy 16 kHz mono PCM16 WAV")->required();
  enhance->add_option("out", enhance_out, "output WAV")->required();
  AddModelOptions(enhance, enhance_model);
  enhance->add_option("--mode", mode, "stream or offline")
      ->check(CLI::IsMember({"stream", "offline"}));
  enhance->add_option("--chunk", chunk, "samples per push in stream mode")
      ->check(CLI::PositiveNumber);

  // bench
  ModelChoice bench_model;
  RtfOptions rtf;
  CLI::App* bench = app.add_subcommand("bench", "single-thread real-time factor");
  AddModelOptions(bench, bench_model);
  bench->add_option("--duration", rtf.duration, "seconds of noise")
      ->check(CLI::PositiveNumber);
  bench->add_option("--repeats", rtf.repeats, "runs; the median is reported")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", rtf.seed, "noise seed");

  // sisdr
  std::string ref_path, est_path;
  CLI::App* sisdr = app.add_subcommand("sisdr", "SI-SDR of EST against REF in dB");
  sisdr->add_option("ref", ref_path)->required();
  sisdr->add_option("est", est_path)->required();

  // complexity
  std::vector<std::string> presets;
  bool all_presets = false;
  std::string table_format = "text";
  CLI::App* complexity =
      app.add_subcommand("complexity", "parameter and MACs table");
  complexity->add_option("--preset", presets, "preset name (repeatable)");
  complexity->add_flag("--all", all_presets, "every standard preset");
  complexity->add_option("--format", table_format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}));

  // features
  ModelChoice features_model;
  std::string features_in, features_out, stage;
  CLI::App* features =
      app.add_subcommand("features", "dump one pipeline stage per step");
  features->add_option("in", features_in)->required();
  AddModelOptions(features, features_model);
  features->add_option("--stage", stage, "mel, l2m, sub or mask")->required();
  features->add_option("--out", features_out, "tensor bundle path")->required();

  // init
  std::string init_out;
  std::uint64_t init_seed = 0;
  bool no_subband = false;
  CLI::App* init = app.add_subcommand("init", "write randomly initialised weights");
  init->add_option("--out", init_out)->required();
  init->add_option("--seed", init_seed);
  init->add_flag("--no-subband", no_subband, "omit the sub-band model (m = inf)");

  std::vector<std::string> argv_store{"ffsn"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ffsn: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*enhance) {
      const LoadedModel model = LoadModel(enhance_model);
      const AudioClip in = ReadWav(enhance_in);
      auto weights = std::make_shared<const ModelWeights>(model.weights);
      AudioClip result;
      result.samples = mode == "stream"
                           ? EnhanceStream(weights, model.config, in.samples, chunk)
                           : EnhanceOffline(*weights, model.config, in);
      WriteWav(enhance_out, result);
    } else if (*bench) {
      const LoadedModel model = LoadModel(bench_model);
      const RtfReport r = MeasureRtf(
          std::make_shared<const ModelWeights>(model.weights), model.config, rtf);
      char line[160];
      std::snprintf(line, sizeof(line),
                    "config=%s audio_s=%.3f median_s=%.4f rtf=%.5f runs=%zu\n",
                    r.config.c_str(), r.audio_duration, r.processing_time,
                    r.rtf, r.run_times.size());
      out << line;
    } else if (*sisdr) {
      const AudioClip ref = ReadWav(ref_path);
      const AudioClip est = ReadWav(est_path);
      out << FormatDb(SiSdr(ref.samples, est.samples)) << "\n";
    } else if (*complexity) {
      if (all_presets) {
        const auto names = StandardPresetNames();
        presets.insert(presets.end(), names.begin(), names.end());
      }
      std::vector<CostReport> reports;
      for (const std::string& name : presets) {
        reports.push_back(CountMacs(PresetByName(name)));
      }
      out << Compare(reports, table_format == "csv" ? TableFormat::kCsv
                                                    : TableFormat::kText);
    } else if (*features) {
      if (stage != "mel" && stage != "l2m" && stage != "sub" && stage != "mask") {
        Fail(ErrorKind::kUsage, "unknown stage '" + stage + "'");
      }
      const LoadedModel model = LoadModel(features_model);
      if (stage == "sub" && !model.config.sub_band_present()) {
        Fail(ErrorKind::kConfiguration, "model has no sub-band stage");
      }
      const AudioClip in = ReadWav(features_in);
      if (in.samples.empty()) Fail(ErrorKind::kData, "empty input");
      std::vector<StepTrace> traces;
      ForwardOffline(model.weights, model.config, Stft(in, AnalysisConfig{}),
                     &traces);
      const NamedTensor t = StageTensor(stage, traces);
      WriteTensorBundle(features_out, std::span<const NamedTensor>(&t, 1));
    } else if (*init) {
      ModelConfig config;
      if (no_subband) config.factor = DownsampleFactor::Infinite();
      SaveWeights(ModelWeights::Random(config, init_seed), config, init_out);
    }
  } catch (const Error& e) {
    err << "ffsn: " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  }
  return kExitOk;
}

}  // namespace ffsn
