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

#include "vhss/params.h"

#include <gtest/gtest.h>

#include "vhss/errors.h"

namespace vhss {
namespace {

bool IsPow2(const mpz_class& v) {
  return v > 0 && mpz_popcount(v.get_mpz_t()) == 1;
}

struct Row {
  const char* b_max;
  size_t n;
  size_t lg_p;
  size_t lg_q;
  double security;
};

// Standard table: (B_max, N, lg p, lg q, security).
constexpr Row kRows[] = {
    {"2", 4096, 66, 153, 117.1},       {"2^16", 4096, 81, 183, 86.5},
    {"2^32", 8192, 99, 220, 198.7},    {"2^64", 8192, 131, 284, 128.9},
    {"2^128", 16384, 197, 417, 214.0}, {"2^256", 16384, 325, 673, 96.7},
};

class TableRowTest : public ::testing::TestWithParam<Row> {};

TEST_P(TableRowTest, DerivedSizesMatch) {
  const Row& row = GetParam();
  const Params params = DeriveParams({.b_max = ParseBigInt(row.b_max)});
  EXPECT_EQ(params.n, row.n);
  EXPECT_TRUE(IsPow2(params.p.value()));
  EXPECT_TRUE(IsPow2(params.q.value()));
  EXPECT_EQ(Log2Floor(params.p.value()), row.lg_p);
  EXPECT_EQ(Log2Floor(params.q.value()), row.lg_q);
  EXPECT_TRUE(params.p.Divides(params.q));
  EXPECT_EQ(params.h_sk, row.n / 2);
  EXPECT_EQ(params.b_err, 64u);
  EXPECT_EQ(params.b_ct, 64u * (row.n + 1));
  EXPECT_EQ(params.b_sk, 1u);
  EXPECT_EQ(params.r.value(), ParseBigInt(row.b_max));
  ASSERT_TRUE(params.security_bits.has_value());
  EXPECT_DOUBLE_EQ(*params.security_bits, row.security);
}

TEST_P(TableRowTest, ExplicitNGivesSameRow) {
  const Row& row = GetParam();
  const Params implicit = DeriveParams({.b_max = ParseBigInt(row.b_max)});
  const Params explicit_n =
      DeriveParams({.b_max = ParseBigInt(row.b_max), .n = row.n});
  EXPECT_EQ(implicit, explicit_n);
}

INSTANTIATE_TEST_SUITE_P(StandardRows, TableRowTest, ::testing::ValuesIn(kRows));

TEST(ParamsTest, TableProfilesInOrder) {
  const auto rows = Table2Profiles();
  ASSERT_EQ(rows.size(), 6u);
  for (size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].b_max, ParseBigInt(kRows[i].b_max));
    EXPECT_EQ(rows[i],
              DeriveParams({.b_max = rows[i].b_max, .n = rows[i].n}));
  }
  EXPECT_DOUBLE_EQ(*rows[4].security_bits, 214.0);
}

TEST(ParamsTest, UnknownBoundWithoutNFails) {
  EXPECT_THROW(DeriveParams({.b_max = 3}), ParameterError);
  EXPECT_THROW(DeriveParams({.b_max = 1, .n = 8}), ParameterError);
  EXPECT_THROW(DeriveParams({.b_max = 16, .kappa = 0, .n = 8}),
               ParameterError);
  EXPECT_THROW(DeriveParams({.b_max = 16, .n = 12}), ParameterError);
}

TEST(ParamsTest, NonTabulatedRequestHasNoSecurity) {
  EXPECT_FALSE(DeriveParams({.b_max = 2, .sigma = 3, .n = 4096})
                   .security_bits.has_value());
  EXPECT_FALSE(DeriveParams({.b_max = 2, .n = 2048}).security_bits);
}

TEST(ParamsTest, NonPowerOfTwoBoundRoundsPUp) {
  const Params params = DeriveParams({.b_max = 3, .n = 8});
  // 8 * 3 * 4 * 2^42 = 3 * 2^47, rounded up to 2^49.
  EXPECT_EQ(Log2Floor(params.p.value()), 49u);
  EXPECT_TRUE(IsPow2(params.p.value()));
}

TEST(ParamsTest, ToyProfile) {
  const Params toy = ToyProfile();
  EXPECT_EQ(toy.n, 8u);
  EXPECT_EQ(toy.p.value(), mpz_class(1) << 43);
  EXPECT_EQ(toy.q.value(), mpz_class(1) << 96);
  EXPECT_EQ(toy.b_add, 2u);
  EXPECT_EQ(toy.r.value(), mpz_class(1) << 16);
  EXPECT_FALSE(toy.security_bits.has_value());
  EXPECT_EQ(ToyProfile(mpz_class(257)).r.value(), 257);
  EXPECT_EQ(ProfileByName("toy:257"), ToyProfile(mpz_class(257)));
  EXPECT_EQ(ProfileByName("toy"), toy);
  EXPECT_EQ(ProfileByName("table2:2^64"), Table2Profiles()[3]);
  EXPECT_EQ(ProfileByName("table2:2"), Table2Profiles()[0]);
  EXPECT_THROW(ProfileByName("bogus"), ParameterError);
  EXPECT_THROW(ProfileByName("toy:1"), ParameterError);
}

TEST(ParamsTest, ParseBigInt) {
  EXPECT_EQ(ParseBigInt("12345"), 12345);
  EXPECT_EQ(ParseBigInt("2^10"), 1024);
  EXPECT_EQ(ParseBigInt("3^4"), 81);
  EXPECT_THROW(ParseBigInt(""), ParameterError);
  EXPECT_THROW(ParseBigInt("2^"), ParameterError);
  EXPECT_THROW(ParseBigInt("x"), ParameterError);
  EXPECT_THROW(ParseBigInt("-4"), ParameterError);
}

TEST(ParamsTest, CheckParamsRejectsInconsistentSets) {
  Params good = ToyProfile();
  EXPECT_NO_THROW(CheckParams(good));
  Params bad = good;
  bad.q = Modulus(bad.q.value() + 1);
  EXPECT_THROW(CheckParams(bad), ParameterError);
  bad = good;
  bad.b_ct += 1;
  EXPECT_THROW(CheckParams(bad), ParameterError);
  bad = good;
  bad.h_sk = 9;
  EXPECT_THROW(CheckParams(bad), ParameterError);
  bad = good;
  bad.r = Modulus(bad.b_max + 1);
  EXPECT_THROW(CheckParams(bad), ParameterError);
}

TEST(CorrectnessBoundTest, ExactValueForSmallestRow) {
  const Params params = Table2Profiles()[0];
  // Exact value of the failure mass, computed independently with Python
  // fractions over the printed formula.
  const mpq_class expect_fail(
      "5705201413846733574586329202691/"
      "2787593149816327892691964784081045188247552");
  EXPECT_EQ(1 - CorrectnessBound(params, 1), expect_fail);
  const mpq_class expect_fail7(
      "39936409896927135022104304418819/"
      "2787593149816327892691964784081045188247552");
  EXPECT_EQ(1 - CorrectnessBound(params, 7), expect_fail7);
  mpq_class floor(1);
  floor -= mpq_class(1, 1ul << 35);
  EXPECT_GE(CorrectnessBound(params, 1), floor);
}

TEST(CorrectnessBoundTest, SizeZeroRejected) {
  EXPECT_THROW(CorrectnessBound(ToyProfile(), 0), ParameterError);
}

TEST(CorrectnessBoundTest, MonotoneInSize) {
  for (const Params& params : Table2Profiles()) {
    mpq_class prev = CorrectnessBound(params, 1);
    for (uint64_t size = 2; size <= 100; ++size) {
      mpq_class next = CorrectnessBound(params, size);
      ASSERT_LT(next, prev) << size;
      prev = next;
    }
  }
}

TEST(ParamsTest, FormatTable) {
  const std::string text = FormatParamsTable({Table2Profiles()[2]});
  EXPECT_EQ(text,
            "B_max\tN\tlg_p\tlg_q\th_sk\tsigma\tB_ct\tkappa\tr\tsecurity\n"
            "2^32\t8192\t99\t220\t4096\t8\t524352\t40\t2^32\t198.7\n");
}

}  // namespace
}  // namespace vhss
