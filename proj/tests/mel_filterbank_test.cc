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

#include "ffsn/mel_filterbank.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "test_util.h"

namespace ffsn {
namespace {

using testing::ThrowsKind;

TEST(MelScaleTest, HtkFormula) {
  EXPECT_DOUBLE_EQ(HzToMel(0.0), 0.0);
  EXPECT_NEAR(HzToMel(700.0), 2595.0 * std::log10(2.0), 1e-9);
  EXPECT_NEAR(HzToMel(8000.0), 2840.0230, 1e-4);
  for (double hz : {10.0, 440.0, 3000.0, 7999.0}) {
    EXPECT_NEAR(MelToHz(HzToMel(hz)), hz, 1e-9);
  }
}

TEST(MelFilterbankTest, DefaultShapeAndRange) {
  const MelFilterbank fb = MelFilterbank::Build();
  EXPECT_EQ(fb.num_mel(), 64);
  EXPECT_EQ(fb.num_bins(), 257);
  ASSERT_EQ(fb.weights().size(), 64u * 257u);
  for (int r = 0; r < 64; ++r) {
    float peak = 0.0f;
    for (int k = 0; k < 257; ++k) {
      const float w = fb.weight(r, k);
      EXPECT_GE(w, 0.0f);
      EXPECT_LE(w, 1.0f);
      peak = std::max(peak, w);
    }
    EXPECT_GT(peak, 0.0f) << "row " << r;
  }
}

TEST(MelFilterbankTest, MatchesIndependentTriangles) {
  const MelFilterbank fb = MelFilterbank::Build();
  const double top = 2595.0 * std::log10(1.0 + 8000.0 / 700.0);
  auto corner = [&](int i) {
    return 700.0 * (std::pow(10.0, top * i / 65.0 / 2595.0) - 1.0);
  };
  for (int r = 0; r < 64; ++r) {
    for (int k = 0; k < 257; ++k) {
      const double f = k * 31.25;
      const double up = (f - corner(r)) / (corner(r + 1) - corner(r));
      const double down = (corner(r + 2) - f) / (corner(r + 2) - corner(r + 1));
      const double want = std::max(0.0, std::min(up, down));
      ASSERT_NEAR(fb.weight(r, k), want, 1e-6) << r << "," << k;
    }
  }
}

TEST(MelFilterbankTest, TinyCaseHandValues) {
  // Corners at 0, 921.456, 3055.884, 8000 Hz; bins every 2000 Hz.
  const MelFilterbank fb = MelFilterbank::Build(5, 2);
  const std::vector<float> want = {0.0f, 0.4946918f, 0.0f,       0.0f,       0.0f,
                                   0.0f, 0.5053082f, 0.8090425f, 0.4045213f, 0.0f};
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_NEAR(fb.weights()[i], want[i], 1e-6) << i;
  }
}

TEST(MelFilterbankTest, CoversInteriorBins) {
  const MelFilterbank fb = MelFilterbank::Build();
  for (int k = 1; k < 256; ++k) {
    float total = 0.0f;
    for (int r = 0; r < 64; ++r) total += fb.weight(r, k);
    EXPECT_GT(total, 0.0f) << "bin " << k;
  }
}

TEST(MelFilterbankTest, ApplyBasics) {
  const MelFilterbank fb = MelFilterbank::Build();
  const std::vector<float> zero(257, 0.0f);
  for (float v : fb.Apply(zero)) EXPECT_EQ(v, 0.0f);

  std::vector<float> impulse(257, 0.0f);
  impulse[40] = 1.0f;
  const std::vector<float> column = fb.Apply(impulse);
  for (int r = 0; r < 64; ++r) EXPECT_FLOAT_EQ(column[r], fb.weight(r, 40));

  const std::vector<float> ones(257, 1.0f);
  const std::vector<float> sums = fb.Apply(ones);
  for (int r = 0; r < 64; ++r) {
    double s = 0.0;
    for (int k = 0; k < 257; ++k) s += fb.weight(r, k);
    EXPECT_NEAR(sums[r], s, 1e-4);
  }
}

TEST(MelFilterbankTest, ApplyIsLinear) {
  const MelFilterbank fb = MelFilterbank::Build();
  const std::vector<float> a = testing::Noise(257, 1, 1.0f);
  const std::vector<float> b = testing::Noise(257, 2, 1.0f);
  std::vector<float> pa(257), pb(257), mix(257);
  for (int k = 0; k < 257; ++k) {
    pa[k] = std::abs(a[k]);
    pb[k] = std::abs(b[k]);
    mix[k] = 3.0f * pa[k] + pb[k];
  }
  const auto ma = fb.Apply(pa), mb = fb.Apply(pb), mm = fb.Apply(mix);
  for (int r = 0; r < 64; ++r) EXPECT_NEAR(mm[r], 3.0f * ma[r] + mb[r], 1e-4);
}

TEST(MelFilterbankTest, Errors) {
  EXPECT_TRUE(ThrowsKind([] { MelFilterbank::Build(257, 1); },
                         ErrorKind::kConfiguration));
  EXPECT_TRUE(ThrowsKind([] { MelFilterbank::Build(257, 64, 16000, 100, 50); },
                         ErrorKind::kConfiguration));
  EXPECT_TRUE(ThrowsKind([] { MelFilterbank::Build(257, 64, 16000, 0, 9000); },
                         ErrorKind::kConfiguration));
  // Too many filters for 9 bins leaves empty rows.
  EXPECT_TRUE(ThrowsKind([] { MelFilterbank::Build(9, 64); },
                         ErrorKind::kConfiguration));
  const MelFilterbank fb = MelFilterbank::Build();
  EXPECT_TRUE(ThrowsKind([&] { fb.Apply(std::vector<float>(256, 0.0f)); },
                         ErrorKind::kShape));
  std::vector<float> negative(257, 0.0f);
  negative[3] = -1.0f;
  EXPECT_TRUE(ThrowsKind([&] { fb.Apply(negative); }, ErrorKind::kData));
  EXPECT_TRUE(ThrowsKind([] { MelFilterbank::FromMatrix(2, 3, {1, 0, 0, 0, 0}); },
                         ErrorKind::kValidation));
  EXPECT_TRUE(ThrowsKind([] { MelFilterbank::FromMatrix(2, 2, {1, 0, 0, 0}); },
                         ErrorKind::kValidation));
  EXPECT_TRUE(ThrowsKind([] { MelFilterbank::FromMatrix(1, 2, {1, -1}); },
                         ErrorKind::kValidation));
}

}  // namespace
}  // namespace ffsn
