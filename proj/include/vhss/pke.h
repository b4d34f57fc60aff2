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

// Ring-LWE public-key encryption with nearly linear decryption:
//   <(1, s), (c0, c1)> = (q/p) m + e  (mod q),  |e| <= B_ct,
// an oblivious key-dependent-message encryption of x * (1, s), and the
// one-server step of distributed decryption.

#ifndef VHSS_PKE_H_
#define VHSS_PKE_H_

#include <utility>

#include "vhss/params.h"
#include "vhss/ring.h"
#include "vhss/sampling.h"

namespace vhss {

struct PublicKey {
  RingElement a;
  RingElement b;
  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

// sk = (1, s).
struct SecretKeyVec {
  RingElement s0;
  RingElement s1;
  RingPair AsPair() const { return {s0, s1}; }
  friend bool operator==(const SecretKeyVec&, const SecretKeyVec&) = default;
};

struct Ciphertext {
  RingElement c0;
  RingElement c1;
  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

// Column j encrypts x * s_j, with s_1 = 1 and s_2 = s.
struct KdmCiphertext {
  Ciphertext col1;
  Ciphertext col2;
  friend bool operator==(const KdmCiphertext&, const KdmCiphertext&) = default;
};

Ciphertext operator+(const Ciphertext& a, const Ciphertext& b);
KdmCiphertext operator+(const KdmCiphertext& a, const KdmCiphertext& b);

// Deterministic core of key generation: b = a s + e.
PublicKey PkeGenFrom(const RingElement& a, const RingElement& s,
                     const RingElement& e);
std::pair<PublicKey, SecretKeyVec> PkeGen(const Params& params,
                                          RngHandle& rng);

// (q/p) m embedded into R_q; m must be an element of R_p.
RingElement ScaleToQ(const Params& params, const RingElement& m);

// Deterministic core of encryption:
//   c1 = -a v + e0,  c0 = b v + e1 + (q/p) m.
Ciphertext PkeEncFrom(const Params& params, const PublicKey& pk,
                      const RingElement& m, const RingElement& v,
                      const RingElement& e0, const RingElement& e1);
// Throws DomainError unless m lives in R_p.
Ciphertext PkeEnc(const Params& params, const PublicKey& pk,
                  const RingElement& m, RngHandle& rng);

// j = 1: Enc(x). j = 2: Enc(0) + (0, (q/p) x). Throws DomainError for other j.
Ciphertext PkeOkdmComponent(const Params& params, const PublicKey& pk,
                            const RingElement& x, int j, RngHandle& rng);
KdmCiphertext PkeOkdm(const Params& params, const PublicKey& pk,
                      const RingElement& x, RngHandle& rng);

// d_b = round((p/q)(c0 t_b0 + c1 t_b1)) mod p, centered and re-embedded
// into R_q. The two servers' outputs sum to x * m mod q with overwhelming
// probability when t_1 + t_2 = x * (1, s).
RingElement PkeDdec(const Params& params, int b, const RingPair& key_share,
                    const Ciphertext& ct);
RingPair PkeDdecMatrix(const Params& params, int b, const RingPair& key_share,
                       const KdmCiphertext& c);

// <sk, c> = c0 + s c1 mod q.
RingElement InnerProduct(const SecretKeyVec& sk, const Ciphertext& ct);

}  // namespace vhss

#endif  // VHSS_PKE_H_
