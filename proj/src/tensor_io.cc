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

#include "ffsn/tensor_io.h"

#include <zlib.h>

#include <bit>
#include <fstream>
#include <iterator>
#include <limits>

#include "ffsn/error.h"

namespace ffsn {
namespace {

constexpr char kBundleMagic[] = "FFST";
constexpr std::uint32_t kBundleVersion = 1;
constexpr std::uint32_t kMaxBundleTensors = 1 << 16;

}  // namespace

std::size_t NamedTensor::element_count() const {
  std::size_t n = 1;
  for (std::uint32_t d : dims) n *= d;
  return dims.empty() ? 0 : n;
}

std::uint32_t Crc32(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in bounded pieces.
  constexpr std::size_t kPiece = 1u << 30;
  for (std::size_t off = 0; off < bytes.size(); off += kPiece) {
    const std::size_t n = std::min(kPiece, bytes.size() - off);
    crc = crc32(crc, bytes.data() + off, static_cast<uInt>(n));
  }
  return static_cast<std::uint32_t>(crc);
}

void ByteWriter::U32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::Raw(std::string_view bytes) {
  bytes_.insert(bytes_.end(), bytes.begin(), bytes.end());
}

void ByteWriter::Tensor(const NamedTensor& tensor) {
  U32(static_cast<std::uint32_t>(tensor.name.size()));
  Raw(tensor.name);
  U32(static_cast<std::uint32_t>(tensor.dims.size()));
  for (std::uint32_t d : tensor.dims) U32(d);
  bytes_.reserve(bytes_.size() + 4 * tensor.values.size());
  for (float v : tensor.values) U32(std::bit_cast<std::uint32_t>(v));
}

void ByteWriter::Crc() { U32(Crc32(bytes_)); }

void ByteReader::Need(std::size_t n) const {
  if (n > remaining()) {
    Fail(ErrorKind::kFormat, "unexpected end of data at byte " +
                                 std::to_string(pos_) + " (need " +
                                 std::to_string(n) + ")");
  }
}

std::uint32_t ByteReader::U32() {
  Need(4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
  }
  pos_ += 4;
  return v;
}

std::string ByteReader::Raw(std::size_t n) {
  Need(n);
  std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
  pos_ += n;
  return s;
}

NamedTensor ByteReader::Tensor() {
  NamedTensor t;
  const std::uint32_t name_len = U32();
  if (name_len == 0 || name_len > kMaxTensorNameLength) {
    Fail(ErrorKind::kFormat, "tensor name length " + std::to_string(name_len) +
                                 " out of range");
  }
  t.name = Raw(name_len);
  for (char ch : t.name) {
    if (ch < 0x21 || ch > 0x7e) {
      Fail(ErrorKind::kFormat, "tensor name is not printable ASCII");
    }
  }
  const std::uint32_t rank = U32();
  if (rank == 0 || rank > kMaxTensorRank) {
    Fail(ErrorKind::kFormat, "tensor '" + t.name + "' has invalid rank " +
                                 std::to_string(rank));
  }
  std::size_t count = 1;
  for (std::uint32_t i = 0; i < rank; ++i) {
    const std::uint32_t d = U32();
    if (d == 0) {
      Fail(ErrorKind::kFormat, "tensor '" + t.name + "' has a zero dimension");
    }
    // Payload must fit in what is left; this also rules out overflow.
    if (count > remaining() / 4 / d) {
      Fail(ErrorKind::kFormat,
           "tensor '" + t.name + "' is larger than the remaining data");
    }
    count *= d;
    t.dims.push_back(d);
  }
  Need(4 * count);
  t.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    t.values[i] = std::bit_cast<float>(U32());
  }
  return t;
}

std::span<const std::uint8_t> VerifyCrcTrailer(
    std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) Fail(ErrorKind::kFormat, "missing CRC trailer");
  const auto body = bytes.first(bytes.size() - 4);
  ByteReader trailer(bytes.last(4));
  const std::uint32_t stored = trailer.U32();
  const std::uint32_t actual = Crc32(body);
  if (stored != actual) {
    Fail(ErrorKind::kFormat, "CRC mismatch (stored " + std::to_string(stored) +
                                 ", computed " + std::to_string(actual) + ")");
  }
  return body;
}

std::vector<std::uint8_t> EncodeTensorBundle(
    std::span<const NamedTensor> tensors) {
  ByteWriter w;
  w.Raw(std::string_view(kBundleMagic, 4));
  w.U32(kBundleVersion);
  w.U32(static_cast<std::uint32_t>(tensors.size()));
  for (const NamedTensor& t : tensors) {
    if (t.element_count() != t.values.size()) {
      Fail(ErrorKind::kShape, "tensor '" + t.name + "' dims disagree with data");
    }
    w.Tensor(t);
  }
  w.Crc();
  return w.Release();
}

std::vector<NamedTensor> DecodeTensorBundle(
    std::span<const std::uint8_t> bytes) {
  ByteReader header(bytes);
  if (header.Raw(4) != std::string_view(kBundleMagic, 4)) {
    Fail(ErrorKind::kFormat, "not a tensor bundle (bad magic)");
  }
  if (header.U32() != kBundleVersion) {
    Fail(ErrorKind::kFormat, "unsupported tensor bundle version");
  }
  ByteReader r(VerifyCrcTrailer(bytes));
  r.Raw(8);
  const std::uint32_t count = r.U32();
  if (count > kMaxBundleTensors) Fail(ErrorKind::kFormat, "too many tensors");
  std::vector<NamedTensor> tensors;
  for (std::uint32_t i = 0; i < count; ++i) tensors.push_back(r.Tensor());
  if (r.remaining() != 0) {
    Fail(ErrorKind::kFormat, "trailing bytes after the last tensor");
  }
  return tensors;
}

std::vector<std::uint8_t> ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kIo, "cannot open '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) Fail(ErrorKind::kIo, "read failed for '" + path + "'");
  return bytes;
}

void WriteFileBytes(const std::string& path,
                    std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorKind::kIo, "cannot create '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) Fail(ErrorKind::kIo, "write failed for '" + path + "'");
}

void WriteTensorBundle(const std::string& path,
                       std::span<const NamedTensor> tensors) {
  WriteFileBytes(path, EncodeTensorBundle(tensors));
}

std::vector<NamedTensor> ReadTensorBundle(const std::string& path) {
  return DecodeTensorBundle(ReadFileBytes(path));
}

}  // namespace ffsn
