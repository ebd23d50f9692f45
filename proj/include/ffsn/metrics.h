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

#ifndef FFSN_METRICS_H_
#define FFSN_METRICS_H_

#include <span>

namespace ffsn {

// Scale-invariant SDR in dB after removing the mean of both signals.
// Returns +infinity when the estimate is an exact scaled copy. Throws kUsage
// on a length mismatch and kUndefinedMetric for a zero-energy reference.
double SiSdr(std::span<const float> reference, std::span<const float> estimate);

}  // namespace ffsn

#endif  // FFSN_METRICS_H_
