/*
 * Copyright 2026 The vhss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "vhss/sampling.h"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "test_util.h"
#include "vhss/errors.h"

namespace vhss {
namespace {

using testing::Fingerprint;
using testing::TestSeed;

const Modulus kQ17(17);
const Modulus kBigQ(mpz_class(1) << 96);

TEST(RngTest, SameSeedSameStream) {
  RngHandle a(TestSeed(1)), b(TestSeed(1)), c(TestSeed(2));
  for (int i = 0; i < 10; ++i) {
    uint64_t x = a.NextU64();
    EXPECT_EQ(x, b.NextU64());
    EXPECT_NE(x, c.NextU64());
  }
}

TEST(RngTest, UniformBelowStaysInRange) {
  RngHandle rng(TestSeed(3));
  std::map<uint64_t, int> hist;
  for (int i = 0; i < 6000; ++i) ++hist[rng.UniformBelow(6)];
  ASSERT_EQ(hist.size(), 6u);
  for (auto [k, v] : hist) {
    EXPECT_LT(k, 6u);
    EXPECT_NEAR(v, 1000, 150);
  }
}

TEST(RngTest, DeriveSeedSeparatesLabels) {
  EXPECT_EQ(DeriveSeed(TestSeed(1), "a"), DeriveSeed(TestSeed(1), "a"));
  EXPECT_NE(DeriveSeed(TestSeed(1), "a"), DeriveSeed(TestSeed(1), "b"));
  EXPECT_NE(DeriveSeed(TestSeed(1), "a"), DeriveSeed(TestSeed(2), "a"));
}

TEST(SampleUniformTest, GoldenOutput) {
  // Cross-checked against an independent ChaCha20 implementation.
  RngHandle rng(TestSeed(10));
  auto a = SampleUniform(8, kBigQ, rng);
  EXPECT_EQ(Fingerprint(a), "1d34dac12b93faa4fd691cd480f4994bafe9f00311c86b8233f63072d5b33c9d");
}

TEST(SampleUniformTest, MeanMatchesUniform) {
  RngHandle rng(TestSeed(11));
  const int draws = 10000;
  std::vector<double> sum(4, 0);
  for (int t = 0; t < draws; ++t) {
    auto a = SampleUniform(4, kQ17, rng);
    for (size_t i = 0; i < 4; ++i) {
      ASSERT_LT(a[i], 17);
      sum[i] += a[i].get_d();
    }
  }
  // Var of U{0..16} = (17^2 - 1) / 12 = 24.
  const double sigma = std::sqrt(24.0 / draws);
  for (double s : sum) EXPECT_NEAR(s / draws, 8.0, 3 * sigma);
}

TEST(SampleUniformTest, DistinctSeedsDiffer) {
  RngHandle a(TestSeed(12)), b(TestSeed(13));
  EXPECT_NE(SampleUniform(64, kBigQ, a), SampleUniform(64, kBigQ, b));
}

TEST(SampleSkTest, ExactWeightAndTernary) {
  RngHandle rng(TestSeed(20));
  for (int t = 0; t < 200; ++t) {
    auto s = SampleSk(64, 32, kBigQ, rng);
    int nonzero = 0;
    for (const auto& c : s.coeffs()) {
      if (c == 0) continue;
      ++nonzero;
      ASSERT_TRUE(c == 1 || c == kBigQ.value() - 1);
    }
    ASSERT_EQ(nonzero, 32);
    ASSERT_EQ(InfNorm(s), 1);
  }
}

TEST(SampleSkTest, FullSupport) {
  RngHandle rng(TestSeed(21));
  auto s = SampleSk(8, 8, kQ17, rng);
  for (const auto& c : s.coeffs()) EXPECT_NE(c, 0);
}

TEST(SampleSkTest, RejectsBadWeight) {
  RngHandle rng(TestSeed(22));
  EXPECT_THROW(SampleSk(8, 9, kQ17, rng), ParameterError);
  EXPECT_THROW(SampleSk(8, 0, kQ17, rng), ParameterError);
}

TEST(SampleSkTest, PositionAndSignFrequencies) {
  RngHandle rng(TestSeed(23));
  const int draws = 10000;
  std::vector<int> hits(8, 0);
  int plus = 0, total = 0;
  for (int t = 0; t < draws; ++t) {
    auto s = SampleSk(8, 4, kQ17, rng);
    for (size_t i = 0; i < 8; ++i) {
      if (s[i] == 0) continue;
      ++hits[i];
      ++total;
      plus += s[i] == 1;
    }
  }
  const double sigma = std::sqrt(0.25 / draws);
  for (int h : hits) EXPECT_NEAR(h / double(draws), 0.5, 3 * sigma);
  EXPECT_NEAR(plus / double(total), 0.5, 3 * std::sqrt(0.25 / total));
}

TEST(SampleErrTest, HardBoundAtSigma8) {
  RngHandle rng(TestSeed(30));
  for (int t = 0; t < 50; ++t) {
    auto e = SampleErr(1024, 8, kBigQ, rng);
    ASSERT_LE(InfNorm(e), 64);
  }
}

TEST(SampleErrTest, VanishingWidthGivesZero) {
  RngHandle rng(TestSeed(31));
  EXPECT_TRUE(SampleErr(16, 1e-9, kBigQ, rng).IsZero());
  EXPECT_THROW(SampleErr(16, 0, kBigQ, rng), ParameterError);
}

TEST(SampleErrTest, MomentsMatchGaussian) {
  RngHandle rng(TestSeed(32));
  double sum = 0, sq = 0;
  const int n = 100000;
  int drawn = 0;
  while (drawn < n) {
    auto e = SampleErr(1024, 8, kBigQ, rng);
    for (const auto& v : CenteredLift(e)) {
      double x = v.get_d();
      sum += x;
      sq += x * x;
      if (++drawn == n) break;
    }
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  EXPECT_NEAR(mean, 0, 0.1);
  // Rounding adds 1/12 to the variance; both fit in the 5% band.
  EXPECT_NEAR(var, 64.0, 0.05 * 64.0);
}

TEST(SampleErrTest, Golden) {
  RngHandle rng(TestSeed(33));
  EXPECT_EQ(Fingerprint(SampleErr(16, 8, kBigQ, rng)), "44ae902af00bbc677fc3417e398316cbd86b17ded94c3343e7a9bc29d67cfc39");
}

TEST(PrfTest, DeterministicAndSeparated) {
  RngHandle rng(TestSeed(40));
  PrfKey key = SamplePrfKey(rng);
  auto a = PrfExpand(key, 7, 16, kBigQ);
  auto b = PrfExpand(key, 7, 16, kBigQ);
  auto c = PrfExpand(key, 8, 16, kBigQ);
  EXPECT_EQ(a.first, b.first);
  EXPECT_EQ(a.second, b.second);
  EXPECT_NE(a.first, c.first);
  EXPECT_NE(a.first, a.second);
  PrfKey other = key;
  other.bytes[0] ^= 1;
  EXPECT_NE(PrfExpand(other, 7, 16, kBigQ).first, a.first);
}

TEST(PrfTest, Golden) {
  // Cross-checked against an independent AES-128-CTR implementation.
  PrfKey key;
  for (size_t i = 0; i < key.bytes.size(); ++i) key.bytes[i] = i;
  auto out = PrfExpand(key, 1, 8, kBigQ);
  EXPECT_EQ(Fingerprint(out.first), "e4cc891912fee86778d76188ed1a2d52d7bf159796d690b770774e0ef8c80c44");
  EXPECT_EQ(Fingerprint(out.second), "7a1fd6da61fe5e763ee60e6d48bbf60e0187f07e5d677623ec66b05eb3a31942");
}

TEST(PrfTest, OutputsAreCanonicalForOddModulus) {
  PrfKey key{};
  const Modulus q((mpz_class(1) << 127) - 1);
  for (uint64_t id = 0; id < 20; ++id) {
    auto out = PrfExpand(key, id, 32, q);
    for (const auto& c : out.first.coeffs()) ASSERT_LT(c, q.value());
  }
}

TEST(PrfTest, ZeroPrfIsZero) {
  ZeroPrf zero;
  auto out = zero.Expand(PrfKey{}, 3, 8, kQ17);
  EXPECT_TRUE(out.first.IsZero());
  EXPECT_TRUE(out.second.IsZero());
}

}  // namespace
}  // namespace vhss
