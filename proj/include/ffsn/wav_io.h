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
// RIFF/WAVE reader and writer restricted to 16-bit PCM, mono, 16 kHz.

#ifndef FFSN_WAV_IO_H_
#define FFSN_WAV_IO_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ffsn/dsp.h"

namespace ffsn {

// Samples are mapped to [-1, 1) by division by 32768. Any other sample
// format, channel count or rate throws kFormat. Unknown chunks are skipped.
AudioClip DecodeWav(std::span<const std::uint8_t> bytes);
// Clamps to [-1, 1) and rounds to the nearest integer code.
std::vector<std::uint8_t> EncodeWav(const AudioClip& clip);

AudioClip ReadWav(const std::string& path);
void WriteWav(const std::string& path, const AudioClip& clip);

}  // namespace ffsn

#endif  // FFSN_WAV_IO_H_
