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

#include "vhss/errors.h"

namespace vhss {

namespace {

void CheckServer(int b) {
  if (b != 1 && b != 2) throw DomainError("server index must be 1 or 2");
}

}  // namespace

Ciphertext operator+(const Ciphertext& a, const Ciphertext& b) {
  return {a.c0 + b.c0, a.c1 + b.c1};
}

KdmCiphertext operator+(const KdmCiphertext& a, const KdmCiphertext& b) {
  return {a.col1 + b.col1, a.col2 + b.col2};
}

PublicKey PkeGenFrom(const RingElement& a, const RingElement& s,
                     const RingElement& e) {
  return {a, a * s + e};
}

std::pair<PublicKey, SecretKeyVec> PkeGen(const Params& params,
                                          RngHandle& rng) {
  RingElement a = SampleUniform(params.n, params.q, rng);
  RingElement s = SampleSk(params.n, params.h_sk, params.q, rng);
  RingElement e = SampleErr(params.n, params.sigma, params.q, rng);
  PublicKey pk = PkeGenFrom(a, s, e);
  return {std::move(pk),
          SecretKeyVec{RingElement::One(params.n, params.q), std::move(s)}};
}

RingElement ScaleToQ(const Params& params, const RingElement& m) {
  if (!(m.modulus() == params.p) || m.degree_bound() != params.n) {
    throw DomainError("message must be an element of R_p");
  }
  const mpz_class delta = params.q.value() / params.p.value();
  std::vector<mpz_class> coeffs(params.n);
  for (size_t i = 0; i < params.n; ++i) coeffs[i] = delta * m[i];
  return RingElement::FromCanonical(params.n, params.q, std::move(coeffs));
}

Ciphertext PkeEncFrom(const Params& params, const PublicKey& pk,
                      const RingElement& m, const RingElement& v,
                      const RingElement& e0, const RingElement& e1) {
  Ciphertext ct{pk.b * v + e1 + ScaleToQ(params, m), e0 - pk.a * v};
  return ct;
}

Ciphertext PkeEnc(const Params& params, const PublicKey& pk,
                  const RingElement& m, RngHandle& rng) {
  if (!(m.modulus() == params.p)) {
    throw DomainError("message must be reduced mod p");
  }
  RingElement v = SampleSk(params.n, params.h_sk, params.q, rng);
  RingElement e0 = SampleErr(params.n, params.sigma, params.q, rng);
  RingElement e1 = SampleErr(params.n, params.sigma, params.q, rng);
  return PkeEncFrom(params, pk, m, v, e0, e1);
}

Ciphertext PkeOkdmComponent(const Params& params, const PublicKey& pk,
                            const RingElement& x, int j, RngHandle& rng) {
  if (j == 1) return PkeEnc(params, pk, x, rng);
  if (j != 2) throw DomainError("OKDM component index must be 1 or 2");
  Ciphertext ct = PkeEnc(params, pk, RingElement::Zero(params.n, params.p), rng);
  ct.c1 += ScaleToQ(params, x);
  return ct;
}

KdmCiphertext PkeOkdm(const Params& params, const PublicKey& pk,
                      const RingElement& x, RngHandle& rng) {
  Ciphertext col1 = PkeOkdmComponent(params, pk, x, 1, rng);
  Ciphertext col2 = PkeOkdmComponent(params, pk, x, 2, rng);
  return {std::move(col1), std::move(col2)};
}

RingElement PkeDdec(const Params& params, int b, const RingPair& key_share,
                    const Ciphertext& ct) {
  CheckServer(b);
  RingElement inner =
      InnerProduct2(ct.c0, key_share.first, ct.c1, key_share.second);
  return ReduceTo(RoundScale(inner, params.p), params.q);
}

RingPair PkeDdecMatrix(const Params& params, int b, const RingPair& key_share,
                       const KdmCiphertext& c) {
  return {PkeDdec(params, b, key_share, c.col1),
          PkeDdec(params, b, key_share, c.col2)};
}

RingElement InnerProduct(const SecretKeyVec& sk, const Ciphertext& ct) {
  return sk.s0 * ct.c0 + sk.s1 * ct.c1;
}

}  // namespace vhss
