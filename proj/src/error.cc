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

#include "ffsn/error.h"

namespace ffsn {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfiguration:
      return "configuration error";
    case ErrorKind::kData:
      return "data error";
    case ErrorKind::kShape:
      return "shape error";
    case ErrorKind::kContract:
      return "contract error";
    case ErrorKind::kFormat:
      return "format error";
    case ErrorKind::kValidation:
      return "validation error";
    case ErrorKind::kIo:
      return "I/O error";
    case ErrorKind::kUsage:
      return "usage error";
    case ErrorKind::kUndefinedMetric:
      return "undefined metric";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + message),
      kind_(kind) {}

void Fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace ffsn
