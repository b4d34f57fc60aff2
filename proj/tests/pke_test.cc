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

#include "vhss/pke.h"

#include <gtest/gtest.h>

#include "test_util.h"
#include "vhss/errors.h"

namespace vhss {
namespace {

using testing::Fingerprint;
using testing::OracleNegacyclic;
using testing::PkeToyParams;
using testing::RandomBelow;
using testing::TestSeed;

// Small signed polynomial with coefficients in [-bound, bound] over modulus m.
RingElement SmallElement(std::mt19937_64& gen, size_t n, const Modulus& m,
                         long bound) {
  std::vector<mpz_class> c(n);
  for (auto& v : c) v = static_cast<long>(gen() % (2 * bound + 1)) - bound;
  return RingElement::FromIntegers(n, m, c);
}

// Centered noise of <sk, ct> - target.
mpz_class Noise(const SecretKeyVec& sk, const Ciphertext& ct,
                const RingElement& target) {
  return InfNorm(InnerProduct(sk, ct) - target);
}

class PkeTest : public ::testing::Test {
 protected:
  Params params_ = PkeToyParams();
};

TEST_F(PkeTest, ToyProfileShape) {
  EXPECT_EQ(params_.b_err, 24u);
  EXPECT_EQ(params_.b_ct, 216u);
  EXPECT_EQ(params_.h_sk, 4u);
}

TEST_F(PkeTest, GenSatisfiesKeyEquation) {
  RngHandle rng(TestSeed(1));
  for (int t = 0; t < 50; ++t) {
    auto [pk, sk] = PkeGen(params_, rng);
    EXPECT_EQ(sk.s0, RingElement::One(params_.n, params_.q));
    EXPECT_EQ(InfNorm(sk.s1), 1);
    EXPECT_LE(InfNorm(pk.b - pk.a * sk.s1), params_.b_err);
  }
}

TEST_F(PkeTest, ZeroNoiseGen) {
  RngHandle rng(TestSeed(2));
  auto a = SampleUniform(params_.n, params_.q, rng);
  auto s = SampleSk(params_.n, params_.h_sk, params_.q, rng);
  auto pk = PkeGenFrom(a, s, RingElement::Zero(params_.n, params_.q));
  EXPECT_EQ(pk.b, a * s);
}

TEST_F(PkeTest, GenGolden) {
  RngHandle rng(TestSeed(3));
  auto [pk, sk] = PkeGen(params_, rng);
  EXPECT_EQ(Fingerprint(pk.a), "ef05e318f33772f5eb52dc94f48a0030a3633a5dd7f0397489747342feea5f7f");
  EXPECT_EQ(Fingerprint(pk.b), "3d437d736aff7dbd2eda9f935a99c594adb922be7c0e4fcd2ac4f99d8303575f");
  EXPECT_EQ(Fingerprint(sk.s1), "24fd6843cc490529ba3c53503cd856b7ff76e4a04d60f47a6585a9eb375cc791");
}

TEST_F(PkeTest, NearlyLinearDecryption) {
  RngHandle rng(TestSeed(4));
  auto [pk, sk] = PkeGen(params_, rng);
  for (int t = 0; t < 100; ++t) {
    auto m = SampleUniform(params_.n, params_.p, rng);
    auto ct = PkeEnc(params_, pk, m, rng);
    ASSERT_LE(Noise(sk, ct, ScaleToQ(params_, m)), params_.b_ct);
  }
}

TEST_F(PkeTest, EncRejectsForeignMessage) {
  RngHandle rng(TestSeed(5));
  auto [pk, sk] = PkeGen(params_, rng);
  auto m = RingElement::Zero(params_.n, params_.q);
  EXPECT_THROW(PkeEnc(params_, pk, m, rng), DomainError);
}

TEST_F(PkeTest, ZeroEverythingEncryptsToZero) {
  RngHandle rng(TestSeed(6));
  auto [pk, sk] = PkeGen(params_, rng);
  const auto zq = RingElement::Zero(params_.n, params_.q);
  auto ct = PkeEncFrom(params_, pk, RingElement::Zero(params_.n, params_.p),
                       zq, zq, zq);
  EXPECT_TRUE(ct.c0.IsZero());
  EXPECT_TRUE(ct.c1.IsZero());
}

TEST_F(PkeTest, FreshRandomnessPerEncryption) {
  RngHandle rng(TestSeed(7));
  auto [pk, sk] = PkeGen(params_, rng);
  auto m = RingElement::One(params_.n, params_.p);
  EXPECT_NE(PkeEnc(params_, pk, m, rng), PkeEnc(params_, pk, m, rng));
}

TEST_F(PkeTest, OkdmColumnsEncryptXTimesKey) {
  RngHandle rng(TestSeed(8));
  auto [pk, sk] = PkeGen(params_, rng);
  std::mt19937_64 gen(8);
  for (int t = 0; t < 100; ++t) {
    auto x = SmallElement(gen, params_.n, params_.p, 8);
    auto c = PkeOkdm(params_, pk, x, rng);
    auto dx = ScaleToQ(params_, x);
    ASSERT_LE(Noise(sk, c.col1, dx), params_.b_ct);
    ASSERT_LE(Noise(sk, c.col2, dx * sk.s1), params_.b_ct);
  }
}

TEST_F(PkeTest, OkdmComponentRejectsBadIndex) {
  RngHandle rng(TestSeed(9));
  auto [pk, sk] = PkeGen(params_, rng);
  auto x = RingElement::One(params_.n, params_.p);
  EXPECT_THROW(PkeOkdmComponent(params_, pk, x, 0, rng), DomainError);
  EXPECT_THROW(PkeOkdmComponent(params_, pk, x, 3, rng), DomainError);
}

TEST_F(PkeTest, OkdmOfZeroIsEncryptionOfZero) {
  RngHandle rng(TestSeed(10));
  auto [pk, sk] = PkeGen(params_, rng);
  auto zero = RingElement::Zero(params_.n, params_.p);
  auto c = PkeOkdmComponent(params_, pk, zero, 2, rng);
  EXPECT_LE(Noise(sk, c, RingElement::Zero(params_.n, params_.q)),
            params_.b_ct);
}

TEST_F(PkeTest, DdecOfZeroShareIsZero) {
  RngHandle rng(TestSeed(11));
  auto [pk, sk] = PkeGen(params_, rng);
  auto ct = PkeEnc(params_, pk, RingElement::One(params_.n, params_.p), rng);
  const RingPair zero{RingElement::Zero(params_.n, params_.q),
                      RingElement::Zero(params_.n, params_.q)};
  EXPECT_TRUE(PkeDdec(params_, 1, zero, ct).IsZero());
  auto both = PkeDdecMatrix(params_, 2, zero, KdmCiphertext{ct, ct});
  EXPECT_TRUE(both.first.IsZero());
  EXPECT_TRUE(both.second.IsZero());
}

struct DdecOutcome {
  bool col1_ok;
  bool col2_ok;
};

DdecOutcome DdecTrial(const Params& params, const PublicKey& pk,
                      const SecretKeyVec& sk, const RingElement& x,
                      const RingElement& m, RngHandle& rng) {
  auto c = PkeOkdm(params, pk, m, rng);
  const auto xq = ReduceTo(x, params.q);
  auto t1 = RingPair{SampleUniform(params.n, params.q, rng),
                     SampleUniform(params.n, params.q, rng)};
  auto t2 = RingPair{xq - t1.first, xq * sk.s1 - t1.second};
  auto d1 = PkeDdecMatrix(params, 1, t1, c);
  auto d2 = PkeDdecMatrix(params, 2, t2, c);
  // Oracle: x * m over the integers, then x * m * s, reduced mod q.
  auto xm = OracleNegacyclic(CenteredLift(x), CenteredLift(m), params.q.value());
  auto xm_q = RingElement::FromCanonical(params.n, params.q, xm);
  return {d1.first + d2.first == xm_q, d1.second + d2.second == xm_q * sk.s1};
}

TEST_F(PkeTest, DistributedDecryptionSums) {
  RngHandle rng(TestSeed(12));
  std::mt19937_64 gen(12);
  auto [pk, sk] = PkeGen(params_, rng);
  // |x m| <= 8 * 1 * 1 keeps the wrap probability near N * 8 / p per trial.
  int failures = 0;
  for (int t = 0; t < 100; ++t) {
    auto x = SmallElement(gen, params_.n, params_.p, 1);
    auto m = SmallElement(gen, params_.n, params_.p, 1);
    auto out = DdecTrial(params_, pk, sk, x, m, rng);
    failures += !out.col1_ok;
  }
  EXPECT_LE(failures, 15);
}

TEST_F(PkeTest, DistributedDecryptionFailureRateUnderBound) {
  RngHandle rng(TestSeed(13));
  std::mt19937_64 gen(13);
  auto [pk, sk] = PkeGen(params_, rng);
  const int trials = 4000;
  int failures = 0;
  mpz_class worst_x = 0, worst_xm = 0;
  for (int t = 0; t < trials; ++t) {
    auto x = SmallElement(gen, params_.n, params_.p, 2);
    auto m = SmallElement(gen, params_.n, params_.p, 2);
    auto xm = RingElement::FromCanonical(
        params_.n, params_.p,
        OracleNegacyclic(CenteredLift(x), CenteredLift(m), params_.p.value()));
    worst_x = std::max(worst_x, InfNorm(x));
    worst_xm = std::max(worst_xm, InfNorm(xm));
    failures += !DdecTrial(params_, pk, sk, x, m, rng).col1_ok;
  }
  const mpq_class success =
      DistributedDecryptionBound(params_, worst_x, worst_xm);
  const double allowed = 1.0 - success.get_d();
  const double rate = failures / double(trials);
  // Three standard errors of slack over the analytical ceiling.
  EXPECT_LE(rate, allowed + 3 * std::sqrt(allowed * (1 - allowed) / trials))
      << "failures=" << failures << " bound=" << allowed;
  // The toy modulus is small enough that wraps really happen.
  EXPECT_GT(failures, 0);
  RecordProperty("failures", failures);
}

TEST(PkeFullTest, NearlyLinearAtTableParameters) {
  const Params params = ProfileByName("table2:2^32");
  RngHandle rng(TestSeed(14));
  auto [pk, sk] = PkeGen(params, rng);
  std::mt19937_64 gen(14);
  for (int t = 0; t < 3; ++t) {
    auto x = SmallElement(gen, params.n, params.p, 1000);
    auto c = PkeOkdm(params, pk, x, rng);
    auto dx = ScaleToQ(params, x);
    ASSERT_LE(Noise(sk, c.col1, dx), params.b_ct);
    ASSERT_LE(Noise(sk, c.col2, dx * sk.s1), params.b_ct);
    auto xs = RingElement::FromIntegers(params.n, params.p, CenteredLift(x));
    auto out = DdecTrial(params, pk, sk, xs,
                         RingElement::One(params.n, params.p), rng);
    ASSERT_TRUE(out.col1_ok);
    ASSERT_TRUE(out.col2_ok);
  }
}

}  // namespace
}  // namespace vhss
