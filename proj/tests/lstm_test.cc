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

#include "ffsn/lstm.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ffsn/tensor_io.h"
#include "test_util.h"

namespace ffsn {
namespace {

using testing::Find;
using testing::FixturePath;
using testing::Noise;
using testing::ThrowsKind;

LstmLayerParams RandomLayer(int in, int hidden, std::uint64_t seed) {
  LstmLayerParams p = LstmLayerParams::Zeros(in, hidden);
  p.w_input = Noise(p.w_input.size(), seed);
  p.w_recurrent = Noise(p.w_recurrent.size(), seed + 1);
  p.bias_input = Noise(p.bias_input.size(), seed + 2);
  p.bias_recurrent = Noise(p.bias_recurrent.size(), seed + 3);
  return p;
}

double Sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Double-precision step, gate blocks [i, f, g, o].
void ReferenceStep(const LstmLayerParams& p, const std::vector<double>& x,
                   std::vector<double>& h, std::vector<double>& c) {
  const int n = p.hidden_dim;
  std::vector<double> z(4 * n);
  for (int r = 0; r < 4 * n; ++r) {
    double acc = static_cast<double>(p.bias_input[r]) + p.bias_recurrent[r];
    for (int k = 0; k < p.input_dim; ++k) acc += p.w_input[r * p.input_dim + k] * x[k];
    for (int k = 0; k < n; ++k) acc += p.w_recurrent[r * n + k] * h[k];
    z[r] = acc;
  }
  for (int j = 0; j < n; ++j) {
    c[j] = Sigmoid(z[n + j]) * c[j] + Sigmoid(z[j]) * std::tanh(z[2 * n + j]);
    h[j] = Sigmoid(z[3 * n + j]) * std::tanh(c[j]);
  }
}

TEST(LstmTest, ZeroWeightsKeepZeroState) {
  const LstmLayerParams p = LstmLayerParams::Zeros(3, 4);
  RecurrentState s = RecurrentState::Zeros(4);
  for (int t = 0; t < 3; ++t) {
    const std::vector<float> h = LstmStep(p, s, std::vector<float>{1, -2, 3});
    for (float v : h) EXPECT_EQ(v, 0.0f);
  }
  for (float v : s.c) EXPECT_EQ(v, 0.0f);
}

TEST(LstmTest, ZeroWeightsHalveCellState) {
  const LstmLayerParams p = LstmLayerParams::Zeros(1, 1);
  RecurrentState s{{0.0f}, {1.0f}};
  const std::vector<float> h = LstmStep(p, s, std::vector<float>{0.0f});
  EXPECT_FLOAT_EQ(s.c[0], 0.5f);
  EXPECT_NEAR(h[0], 0.5 * std::tanh(0.5), 1e-7);
}

TEST(LstmTest, ScalarHandCase) {
  LstmLayerParams p = LstmLayerParams::Zeros(1, 1);
  std::fill(p.w_input.begin(), p.w_input.end(), 0.5f);
  std::fill(p.w_recurrent.begin(), p.w_recurrent.end(), 0.5f);
  RecurrentState s = RecurrentState::Zeros(1);
  const std::vector<float> h = LstmStep(p, s, std::vector<float>{1.0f});
  // Every gate sees z = 0.5.
  const double sig = 1.0 / (1.0 + std::exp(-0.5));
  const double c = sig * std::tanh(0.5);
  EXPECT_NEAR(s.c[0], c, 1e-6);
  EXPECT_NEAR(h[0], sig * std::tanh(c), 1e-6);
  EXPECT_NEAR(h[0], 0.174278, 1e-5);
}

TEST(LstmTest, SaturatesWithinBounds) {
  LstmLayerParams p = RandomLayer(4, 6, 10);
  for (float& w : p.w_input) w *= 200.0f;
  RecurrentState s = RecurrentState::Zeros(6);
  for (int t = 0; t < 50; ++t) {
    const std::vector<float> h = LstmStep(p, s, Noise(4, 100 + t, 5.0f));
    for (float v : h) {
      ASSERT_TRUE(std::isfinite(v));
      ASSERT_LE(std::abs(v), 1.0f);
    }
    for (float v : s.c) ASSERT_LE(std::abs(v), t + 1.0f);
  }
}

TEST(LstmTest, MatchesDoubleReference) {
  const LstmLayerParams p = RandomLayer(3, 4, 20);
  RecurrentState s = RecurrentState::Zeros(4);
  std::vector<double> h(4, 0.0), c(4, 0.0);
  for (int t = 0; t < 20; ++t) {
    const std::vector<float> x = Noise(3, 200 + t, 2.0f);
    const std::vector<float> out = LstmStep(p, s, x);
    ReferenceStep(p, std::vector<double>(x.begin(), x.end()), h, c);
    for (int j = 0; j < 4; ++j) {
      EXPECT_NEAR(out[j], h[j], 1e-6);
      EXPECT_NEAR(s.c[j], c[j], 1e-6);
    }
  }
}

TEST(LstmTest, SequenceIsBitExactUnderSplitting) {
  const LstmLayerParams p = RandomLayer(5, 7, 30);
  const std::vector<float> xs = Noise(5 * 12, 31, 1.0f);

  RecurrentState whole = RecurrentState::Zeros(7);
  const std::vector<float> all = LstmSequence(p, whole, xs);
  ASSERT_EQ(all.size(), 7u * 12u);

  for (int split : {1, 4, 11}) {
    RecurrentState s = RecurrentState::Zeros(7);
    std::vector<float> parts =
        LstmSequence(p, s, std::span<const float>(xs).first(5 * split));
    const std::vector<float> rest =
        LstmSequence(p, s, std::span<const float>(xs).subspan(5 * split));
    parts.insert(parts.end(), rest.begin(), rest.end());
    EXPECT_EQ(parts, all) << "split at " << split;
    EXPECT_EQ(s.h, whole.h);
    EXPECT_EQ(s.c, whole.c);
  }

  RecurrentState stepped = RecurrentState::Zeros(7);
  for (int t = 0; t < 12; ++t) {
    const auto h = LstmStep(p, stepped, std::span<const float>(xs).subspan(5 * t, 5));
    EXPECT_TRUE(std::equal(h.begin(), h.end(), all.begin() + 7 * t));
  }
}

TEST(LstmTest, MatchesFixtureSequence) {
  const auto bundle = ReadTensorBundle(FixturePath("lstm_sequence.ffst"));
  LstmLayerParams p = LstmLayerParams::Zeros(3, 2);
  p.w_input = Find(bundle, "w_input").values;
  p.w_recurrent = Find(bundle, "w_recurrent").values;
  p.bias_input = Find(bundle, "bias_input").values;
  p.bias_recurrent = Find(bundle, "bias_recurrent").values;
  RecurrentState s = RecurrentState::Zeros(2);
  const std::vector<float> h = LstmSequence(p, s, Find(bundle, "x").values);
  EXPECT_LE(testing::MaxAbsDiff(h, Find(bundle, "h").values), 1e-6);
  const std::vector<float>& c = Find(bundle, "c").values;
  EXPECT_NEAR(s.c[0], c[4], 1e-6);
  EXPECT_NEAR(s.c[1], c[5], 1e-6);
}

TEST(AffineTest, HandCases) {
  AffineParams a = AffineParams::Zeros(3, 2);
  EXPECT_EQ(Affine(a, std::vector<float>{1, 2, 3}), (std::vector<float>{0, 0}));
  a.weight = {1, 0, 0, 0, 1, 0};
  a.bias = {0.5f, -1.0f};
  EXPECT_EQ(Affine(a, std::vector<float>{4, 5, 6}), (std::vector<float>{4.5f, 4.0f}));
}

TEST(AffineTest, MatchesBruteForce) {
  AffineParams a = AffineParams::Zeros(3, 4);
  a.weight = Noise(12, 40, 1.0f);
  a.bias = Noise(4, 41, 1.0f);
  const std::vector<float> x = Noise(3, 42, 1.0f);
  const std::vector<float> y = Affine(a, x);
  for (int o = 0; o < 4; ++o) {
    double want = a.bias[o];
    for (int i = 0; i < 3; ++i) want += static_cast<double>(a.weight[o * 3 + i]) * x[i];
    EXPECT_NEAR(y[o], want, 1e-6);
  }
}

TEST(LstmTest, Errors) {
  LstmLayerParams p = LstmLayerParams::Zeros(3, 2);
  RecurrentState s = RecurrentState::Zeros(2);
  EXPECT_TRUE(ThrowsKind([&] { LstmStep(p, s, std::vector<float>(2)); },
                         ErrorKind::kShape));
  EXPECT_TRUE(ThrowsKind([&] { LstmStep(p, s, std::vector<float>{0, NAN, 0}); },
                         ErrorKind::kData));
  EXPECT_TRUE(ThrowsKind([&] { LstmSequence(p, s, std::vector<float>(4)); },
                         ErrorKind::kShape));
  p.w_recurrent.pop_back();
  EXPECT_TRUE(ThrowsKind([&] { p.Validate(); }, ErrorKind::kShape));
  AffineParams a = AffineParams::Zeros(2, 2);
  EXPECT_TRUE(ThrowsKind([&] { Affine(a, std::vector<float>(3)); }, ErrorKind::kShape));
}

}  // namespace
}  // namespace ffsn
