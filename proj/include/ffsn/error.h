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

#ifndef FFSN_ERROR_H_
#define FFSN_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ffsn {

// Every failure raised by the library carries one of these classes so that
// callers (the CLI in particular) can map them to distinct exit codes.
enum class ErrorKind {
  kConfiguration,
  kData,
  kShape,
  kContract,
  kFormat,
  kValidation,
  kIo,
  kUsage,
  kUndefinedMetric,
};

std::string_view ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void Fail(ErrorKind kind, const std::string& message);

}  // namespace ffsn

#endif  // FFSN_ERROR_H_
