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

#ifndef FFSN_CLI_H_
#define FFSN_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "ffsn/error.h"

namespace ffsn {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFormat = 3;
inline constexpr int kExitValidation = 4;
inline constexpr int kExitConfiguration = 5;
inline constexpr int kExitIo = 6;
inline constexpr int kExitData = 7;
inline constexpr int kExitUndefinedMetric = 8;

int ExitCodeFor(ErrorKind kind);

// `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace ffsn

#endif  // FFSN_CLI_H_
