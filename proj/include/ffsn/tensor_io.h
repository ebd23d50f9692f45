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
// Little-endian tensor encoding shared by weight files, fixture bundles and
// feature dumps. One tensor is
//
//   u32 name_len | name (ASCII) | u32 rank | u32 dims[rank] | f32 payload
//
// with the payload in row-major order. A bundle ("FFST") is
//
//   "FFST" | u32 version (1) | u32 count | tensors... | u32 crc32
//
// where the CRC-32 (IEEE) covers every preceding byte.

#ifndef FFSN_TENSOR_IO_H_
#define FFSN_TENSOR_IO_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ffsn {

struct NamedTensor {
  std::string name;
  std::vector<std::uint32_t> dims;
  std::vector<float> values;

  std::size_t element_count() const;
};

inline constexpr std::uint32_t kMaxTensorNameLength = 256;
inline constexpr std::uint32_t kMaxTensorRank = 8;

std::uint32_t Crc32(std::span<const std::uint8_t> bytes);

class ByteWriter {
 public:
  void U32(std::uint32_t v);
  void Raw(std::string_view bytes);
  void Tensor(const NamedTensor& tensor);
  // Appends the CRC-32 of everything written so far.
  void Crc();

  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::vector<std::uint8_t> Release() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

// Bounds-checked reader; every overrun throws kFormat.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint32_t U32();
  std::string Raw(std::size_t n);
  NamedTensor Tensor();

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void Need(std::size_t n) const;

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

// Throws kFormat if the stored trailer does not match; returns the bytes
// without the trailer.
std::span<const std::uint8_t> VerifyCrcTrailer(
    std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> EncodeTensorBundle(
    std::span<const NamedTensor> tensors);
std::vector<NamedTensor> DecodeTensorBundle(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> ReadFileBytes(const std::string& path);
void WriteFileBytes(const std::string& path,
                    std::span<const std::uint8_t> bytes);

void WriteTensorBundle(const std::string& path,
                       std::span<const NamedTensor> tensors);
std::vector<NamedTensor> ReadTensorBundle(const std::string& path);

}  // namespace ffsn

#endif  // FFSN_TENSOR_IO_H_
