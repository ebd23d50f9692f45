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

#ifndef FFSN_TESTS_TEST_UTIL_H_
#define FFSN_TESTS_TEST_UTIL_H_

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ffsn/dsp.h"
#include "ffsn/error.h"
#include "ffsn/tensor_io.h"

namespace ffsn::testing {

inline std::string FixturePath(const std::string& name) {
  return std::string(FFSN_FIXTURE_DIR) + "/" + name;
}

inline const NamedTensor& Find(const std::vector<NamedTensor>& bundle,
                               const std::string& name) {
  for (const NamedTensor& t : bundle) {
    if (t.name == name) return t;
  }
  ADD_FAILURE() << "bundle has no tensor " << name;
  static const NamedTensor empty;
  return empty;
}

inline std::vector<float> Noise(std::size_t n, std::uint64_t seed,
                                float scale = 0.5f) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> dist(-scale, scale);
  std::vector<float> v(n);
  for (float& x : v) x = dist(rng);
  return v;
}

inline ComplexSpectrogram RandomSpectrogram(int frames, int bins,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<float> dist(0.0f, 1.0f);
  ComplexSpectrogram s(frames, bins);
  for (int t = 0; t < frames; ++t) {
    for (int f = 0; f < bins; ++f) s.at(t, f) = {dist(rng), dist(rng)};
  }
  return s;
}

inline double MaxAbsDiff(std::span<const float> a, std::span<const float> b) {
  EXPECT_EQ(a.size(), b.size());
  double d = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    d = std::max(d, std::abs(static_cast<double>(a[i]) - b[i]));
  }
  return d;
}

// Succeeds when `fn` throws an ffsn::Error of the given kind.
template <typename Fn>
::testing::AssertionResult ThrowsKind(Fn&& fn, ErrorKind kind) {
  try {
    fn();
  } catch (const Error& e) {
    if (e.kind() == kind) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure()
           << "threw " << ErrorKindName(e.kind()) << ": " << e.what();
  } catch (const std::exception& e) {
    return ::testing::AssertionFailure() << "foreign exception: " << e.what();
  }
  return ::testing::AssertionFailure() << "did not throw";
}

}  // namespace ffsn::testing

#endif  // FFSN_TESTS_TEST_UTIL_H_
