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

#include "ffsn/wav_io.h"

#include <algorithm>
#include <cmath>

#include "ffsn/error.h"
#include "ffsn/tensor_io.h"

namespace ffsn {
namespace {

std::uint16_t U16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t U32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(U16(b, at)) |
         (static_cast<std::uint32_t>(U16(b, at + 2)) << 16);
}

bool Tag(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
  return std::equal(tag, tag + 4, b.begin() + at);
}

}  // namespace

AudioClip DecodeWav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || !Tag(bytes, 0, "RIFF") || !Tag(bytes, 8, "WAVE")) {
    Fail(ErrorKind::kFormat, "not a RIFF/WAVE file");
  }
  bool have_fmt = false;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint32_t size = U32(bytes, pos + 4);
    const std::size_t body = pos + 8;
    if (size > bytes.size() - body) {
      Fail(ErrorKind::kFormat, "WAV chunk runs past the end of the file");
    }
    if (Tag(bytes, pos, "fmt ")) {
      if (size < 16) Fail(ErrorKind::kFormat, "short fmt chunk");
      const std::uint16_t format = U16(bytes, body);
      const std::uint16_t channels = U16(bytes, body + 2);
      const std::uint32_t rate = U32(bytes, body + 4);
      const std::uint16_t bits = U16(bytes, body + 14);
      if (format != 1 || bits != 16) {
        Fail(ErrorKind::kFormat, "only 16-bit PCM WAV is supported");
      }
      if (channels != 1) {
        Fail(ErrorKind::kFormat, "expected mono audio, got " +
                                     std::to_string(channels) + " channels");
      }
      if (rate != static_cast<std::uint32_t>(kSampleRate)) {
        Fail(ErrorKind::kFormat, "expected " + std::to_string(kSampleRate) +
                                     " Hz, got " + std::to_string(rate));
      }
      have_fmt = true;
    } else if (Tag(bytes, pos, "data")) {
      if (!have_fmt) Fail(ErrorKind::kFormat, "data chunk before fmt chunk");
      if (size % 2 != 0) Fail(ErrorKind::kFormat, "odd PCM data size");
      AudioClip clip;
      clip.sample_rate = kSampleRate;
      clip.samples.resize(size / 2);
      for (std::size_t i = 0; i < clip.samples.size(); ++i) {
        const auto code = static_cast<std::int16_t>(U16(bytes, body + 2 * i));
        clip.samples[i] = static_cast<float>(code) / 32768.0f;
      }
      return clip;
    }
    pos = body + size + (size & 1);
  }
  Fail(ErrorKind::kFormat, "WAV file has no data chunk");
}

std::vector<std::uint8_t> EncodeWav(const AudioClip& clip) {
  if (clip.sample_rate != kSampleRate) {
    Fail(ErrorKind::kFormat, "can only write 16 kHz audio");
  }
  const auto data_size = static_cast<std::uint32_t>(2 * clip.samples.size());
  ByteWriter w;
  w.Raw("RIFF");
  w.U32(36 + data_size);
  w.Raw("WAVEfmt ");
  w.U32(16);
  w.U32(1 | (1u << 16));  // PCM, mono
  w.U32(kSampleRate);
  w.U32(2 * kSampleRate);
  w.U32(2 | (16u << 16));  // block align, bits
  w.Raw("data");
  w.U32(data_size);
  std::vector<std::uint8_t> out = w.Release();
  out.reserve(out.size() + data_size);
  for (float s : clip.samples) {
    const float v = std::isfinite(s) ? s : 0.0f;
    const long code =
        std::clamp(std::lround(static_cast<double>(v) * 32768.0), -32768L, 32767L);
    const auto u = static_cast<std::uint16_t>(static_cast<std::int16_t>(code));
    out.push_back(static_cast<std::uint8_t>(u & 0xff));
    out.push_back(static_cast<std::uint8_t>(u >> 8));
  }
  return out;
}

AudioClip ReadWav(const std::string& path) {
  return DecodeWav(ReadFileBytes(path));
}

void WriteWav(const std::string& path, const AudioClip& clip) {
  WriteFileBytes(path, EncodeWav(clip));
}

}  // namespace ffsn
