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

#include "vhss/wire.h"

#include <gtest/gtest.h>
#include <openssl/sha.h>

#include <cstdio>
#include <filesystem>
#include <functional>

#include "test_util.h"
#include "vhss/errors.h"

namespace vhss {
namespace {

using testing::TestSeed;
using wire::Bytes;

std::string Sha256Hex(const Bytes& b) {
  unsigned char md[SHA256_DIGEST_LENGTH];
  SHA256(b.data(), b.size(), md);
  return wire::Hex(std::span<const uint8_t>(md, sizeof md));
}

// Every proper prefix must fail to decode with DecodeError.
void ExpectPrefixesRejected(const Bytes& bytes,
                            const std::function<void(const Bytes&)>& decode) {
  for (size_t len = 0; len < bytes.size(); ++len) {
    Bytes cut(bytes.begin(), bytes.begin() + len);
    EXPECT_THROW(decode(cut), DecodeError) << "prefix " << len;
  }
  Bytes longer = bytes;
  longer.push_back(0);
  EXPECT_THROW(decode(longer), DecodeError) << "trailing byte";
}

class WireTest : public ::testing::Test {
 protected:
  Params params_ = ToyProfile();
  RngHandle rng_{TestSeed(7)};
  KeyBundle keys_ = KeyGen(params_, rng_);
};

TEST_F(WireTest, ParamsRoundTrip) {
  std::vector<Params> all = Table2Profiles();
  all.push_back(ToyProfile());
  all.push_back(testing::PkeToyParams());
  for (unsigned long r = 2; r < 100; ++r) all.push_back(ToyProfile(mpz_class(r)));
  for (const Params& p : all) {
    const Bytes b = wire::Encode(p);
    EXPECT_EQ(wire::PeekKind(b), wire::Kind::kParams);
    EXPECT_EQ(wire::DecodeParams(b), p);
    EXPECT_EQ(wire::Encode(wire::DecodeParams(b)), b);
  }
  ExpectPrefixesRejected(wire::Encode(params_),
                         [](const Bytes& b) { wire::DecodeParams(b); });
}

TEST_F(WireTest, ParamsDigestBindsEveryField) {
  EXPECT_NE(wire::ParamsDigest(ToyProfile()),
            wire::ParamsDigest(ToyProfile(mpz_class(257))));
  Params with_security = params_;
  with_security.security_bits = 100.0;
  EXPECT_NE(wire::ParamsDigest(params_), wire::ParamsDigest(with_security));
}

TEST_F(WireTest, KeysRoundTrip) {
  RngHandle rng(TestSeed(8));
  for (int i = 0; i < 100; ++i) {
    KeyBundle k = KeyGen(params_, rng);
    EXPECT_EQ(wire::DecodePublicKey(params_, wire::Encode(params_, k.pk)), k.pk);
    EXPECT_EQ(wire::DecodeVerificationKey(params_, wire::Encode(params_, k.vk)),
              k.vk);
    EXPECT_EQ(wire::DecodeEvaluationKey(params_, wire::Encode(params_, k.ek1)),
              k.ek1);
    EXPECT_EQ(wire::DecodeEvaluationKey(params_, wire::Encode(params_, k.ek2)),
              k.ek2);
  }
}

TEST_F(WireTest, CiphertextsAndPartialsRoundTrip) {
  for (int i = 0; i < 100; ++i) {
    auto x = SampleUniform(params_.n, params_.r, rng_);
    auto c = Encrypt(params_, keys_.pk, x, rng_);
    EXPECT_EQ(wire::DecodeCiphertext(params_, wire::Encode(params_, c)), c);
    PartialResult y{SampleUniform(params_.n, params_.r, rng_),
                    SampleUniform(params_.n, params_.r, rng_)};
    const Bytes b = wire::Encode(params_, y);
    // Header, then 2 N coefficients of ceil(bits(r) / 8) bytes.
    EXPECT_EQ(b.size(), 42 + 2 * params_.n * params_.r.byte_width());
    EXPECT_EQ(wire::DecodePartial(params_, b), y);
  }
}

TEST_F(WireTest, ProgramsRoundTrip) {
  std::mt19937_64 gen(9);
  for (int i = 0; i < 100; ++i) {
    Program p;
    p.n_inputs = 1 + gen() % 3;
    p.input_bounds.push_back({CtId{0}, Magnitude{gen() % 50, gen() % 4}});
    p.instructions.push_back(op::Load{RegId{0}, CtId{0}});
    for (uint32_t k = 1; k < 1 + gen() % 6; ++k) {
      switch (gen() % 3) {
        case 0:
          p.instructions.push_back(op::Mult{RegId{k}, RegId{k - 1}, CtId{0}});
          break;
        case 1:
          p.instructions.push_back(op::AddMem{RegId{k}, RegId{k - 1}, RegId{0}});
          break;
        default:
          p.instructions.push_back(op::CMult{
              RegId{k}, {mpz_class(static_cast<long>(gen() % 9) - 4), 1},
              CtId{0}});
      }
    }
    p.instructions.push_back(
        op::Output{RegId{static_cast<uint32_t>(p.instructions.size() - 1)}});
    EXPECT_EQ(wire::DecodeProgram(params_, wire::Encode(params_, p)), p);
  }
}

TEST_F(WireTest, TruncationAlwaysRejected) {
  auto c = EncryptScalar(params_, keys_.pk, 3, rng_);
  const PartialResult y{RingElement::One(params_.n, params_.r),
                        RingElement::Zero(params_.n, params_.r)};
  const Program prog = ParseProgram("load r0 ct0\noutput r0\n");
  const Params& p = params_;
  ExpectPrefixesRejected(wire::Encode(p, keys_.pk),
                         [&](const Bytes& b) { wire::DecodePublicKey(p, b); });
  ExpectPrefixesRejected(wire::Encode(p, keys_.vk), [&](const Bytes& b) {
    wire::DecodeVerificationKey(p, b);
  });
  ExpectPrefixesRejected(wire::Encode(p, keys_.ek2), [&](const Bytes& b) {
    wire::DecodeEvaluationKey(p, b);
  });
  ExpectPrefixesRejected(wire::Encode(p, c),
                         [&](const Bytes& b) { wire::DecodeCiphertext(p, b); });
  ExpectPrefixesRejected(wire::Encode(p, y),
                         [&](const Bytes& b) { wire::DecodePartial(p, b); });
  ExpectPrefixesRejected(wire::Encode(p, prog),
                         [&](const Bytes& b) { wire::DecodeProgram(p, b); });
}

TEST_F(WireTest, EnvelopeMismatches) {
  Bytes pk = wire::Encode(params_, keys_.pk);
  EXPECT_THROW(wire::DecodeVerificationKey(params_, pk), DecodeError);
  EXPECT_THROW(wire::DecodePublicKey(ToyProfile(mpz_class(257)), pk),
               DecodeError);
  Bytes bad_magic = pk;
  bad_magic[0] ^= 1;
  EXPECT_THROW(wire::PeekKind(bad_magic), DecodeError);
  EXPECT_THROW(wire::DecodePublicKey(params_, bad_magic), DecodeError);
  Bytes bad_version = pk;
  bad_version[7] = 2;
  EXPECT_THROW(wire::DecodePublicKey(params_, bad_version), DecodeError);
  Bytes bad_kind = pk;
  bad_kind[9] = 42;
  EXPECT_THROW(wire::PeekKind(bad_kind), DecodeError);
  Bytes bad_digest = pk;
  bad_digest[10] ^= 0x80;
  EXPECT_THROW(wire::DecodePublicKey(params_, bad_digest), DecodeError);
  Bytes params = wire::Encode(params_);
  params[12] ^= 1;
  EXPECT_THROW(wire::DecodeParams(params), DecodeError);
}

TEST_F(WireTest, NonCanonicalCoefficientRejected) {
  Bytes pk = wire::Encode(params_, keys_.pk);
  const size_t width = params_.q.byte_width();
  ASSERT_EQ(width, 13u);  // bits(2^96) = 97
  // Top byte of the first coefficient: any nonzero value is >= 2^96 = q.
  Bytes bad = pk;
  bad[42 + width - 1] = 1;
  EXPECT_THROW(wire::DecodePublicKey(params_, bad), DecodeError);
  // Partials over r = 2^16 + ... : a coefficient equal to r is rejected.
  const Params small = ToyProfile(mpz_class(300));
  PartialResult y{RingElement::Zero(small.n, small.r),
                  RingElement::Zero(small.n, small.r)};
  Bytes partial = wire::Encode(small, y);
  partial[42] = 300 & 0xff;
  partial[43] = 300 >> 8;
  EXPECT_THROW(wire::DecodePartial(small, partial), DecodeError);
  partial[42] = 299 & 0xff;
  EXPECT_EQ(wire::DecodePartial(small, partial).t[0], 299);
}

TEST_F(WireTest, ProgramEncodingMustBeCanonical) {
  Bytes enc = wire::Encode(params_, ParseProgram("load r0 ct0\noutput r0\n"));
  // A tab instead of a space still parses but is not canonical; a mangled
  // keyword does not parse at all.
  Bytes spaced = enc;
  auto it = std::search(spaced.begin(), spaced.end(), std::begin("load r0"),
                        std::end("load r0") - 1);
  ASSERT_NE(it, spaced.end());
  *(it + 4) = '\t';
  EXPECT_THROW(wire::DecodeProgram(params_, spaced), DecodeError);
  Bytes garbage = enc;
  garbage[it - spaced.begin()] = 'X';
  EXPECT_THROW(wire::DecodeProgram(params_, garbage), DecodeError);
}

TEST_F(WireTest, EncodingIsUnique) {
  // Equal objects encode equally, different objects differently.
  auto a = wire::Encode(params_, keys_.vk);
  auto b = wire::Encode(params_, wire::DecodeVerificationKey(params_, a));
  EXPECT_EQ(a, b);
  EXPECT_NE(wire::Encode(params_, keys_.ek1), wire::Encode(params_, keys_.ek2));
}

TEST_F(WireTest, GoldenDumps) {
  RngHandle rng(TestSeed(77));
  KeyBundle k = KeyGen(params_, rng);
  auto c = EncryptScalar(params_, k.pk, 5, rng);
  // Both params digests were cross-checked against an independent encoder
  // written from the documented layout.
  EXPECT_EQ(Sha256Hex(wire::Encode(params_)), "269c36e49b4fa1bf4397389c71d7911a7ae91c7d2eb79e43081e06d5103c00e9");
  EXPECT_EQ(Sha256Hex(wire::Encode(params_, k.pk)), "a04b36c58f970506b211f04136a72a585f2089a88d5116a1804269d13321a2ac");
  EXPECT_EQ(Sha256Hex(wire::Encode(params_, k.ek1)), "db7b7134d5161c2f3265a5b0f9f8b787c94cf28e2293a68c2df30fc6af1888b8");
  EXPECT_EQ(Sha256Hex(wire::Encode(params_, c)), "6353834d72e3e4248bf550c78da3d464e22b75833f9d5ecbc613740a14d96f39");
  EXPECT_EQ(Sha256Hex(wire::Encode(Table2Profiles()[2])), "272601cb2296546203ab5c8d072cc74b12715669c788b8428322fcf1a8c10a56");
}

TEST_F(WireTest, HeaderLayout) {
  Bytes b = wire::Encode(params_, keys_.pk);
  EXPECT_EQ(std::string(b.begin(), b.begin() + 7), std::string("2SVHSS\0", 7));
  EXPECT_EQ(b[7], 1);
  EXPECT_EQ(b[8], 0);
  EXPECT_EQ(b[9], static_cast<uint8_t>(wire::Kind::kPublicKey));
  const auto digest = wire::ParamsDigest(params_);
  EXPECT_TRUE(std::equal(digest.begin(), digest.end(), b.begin() + 10));
  EXPECT_EQ(b.size(), 42 + 2 * params_.n * 13);
}

TEST_F(WireTest, Files) {
  const auto path =
      (std::filesystem::temp_directory_path() / "vhss_wire_test.vhss").string();
  Bytes b = wire::Encode(params_, keys_.vk);
  wire::WriteFile(path, b);
  EXPECT_EQ(wire::ReadFile(path), b);
  std::remove(path.c_str());
  EXPECT_THROW(wire::ReadFile(path), DecodeError);
  EXPECT_THROW(wire::WriteFile("/nonexistent-dir/x.vhss", b), DecodeError);
}

TEST(WireHexTest, Hex) {
  const uint8_t data[] = {0x00, 0xab, 0x10};
  EXPECT_EQ(wire::Hex(data), "00ab10");
}

}  // namespace
}  // namespace vhss
