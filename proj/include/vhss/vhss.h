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

// Two-server verifiable homomorphic secret sharing.
//
// Each server holds additive shares of sk = (1, s) and of the verification
// key vk = s_hat * sk. Evaluating a program yields per-server shares of both
// y = f(x) and its tag tau = s_hat * y; the output client accepts y only if
// the reconstructed tag matches.

#ifndef VHSS_VHSS_H_
#define VHSS_VHSS_H_

#include <cstdint>
#include <optional>
#include <span>

#include "vhss/params.h"
#include "vhss/pke.h"
#include "vhss/program.h"
#include "vhss/ring.h"
#include "vhss/sampling.h"

namespace vhss {

struct VerificationKey {
  RingElement s_hat;
  RingElement s_hat_s;
  friend bool operator==(const VerificationKey&,
                         const VerificationKey&) = default;
};

struct EvaluationKey {
  int server;  // 1 or 2
  PrfKey k1;
  PrfKey k2;
  RingPair sk_share;  // s_{b,1}
  RingPair vk_share;  // s_{b,2}
  friend bool operator==(const EvaluationKey&, const EvaluationKey&) = default;
};

// Server-local share of (x * sk, x * s_hat * sk).
struct MemoryShare {
  RingPair t;
  RingPair tau;
  friend bool operator==(const MemoryShare&, const MemoryShare&) = default;
};

struct PartialResult {
  RingElement t;    // over R_r
  RingElement tau;  // over R_r
  friend bool operator==(const PartialResult&, const PartialResult&) = default;
};

struct KeyBundle {
  PublicKey pk;
  VerificationKey vk;
  EvaluationKey ek1;
  EvaluationKey ek2;
  // Not part of the protocol output; kept so tests can check share algebra.
  SecretKeyVec sk;
};

KeyBundle KeyGen(const Params& params, RngHandle& rng);

// x must be an element of R_r; it is centered-lifted into R_p.
KdmCiphertext Encrypt(const Params& params, const PublicKey& pk,
                      const RingElement& x, RngHandle& rng);
// Integer input embedded as a constant polynomial.
KdmCiphertext EncryptScalar(const Params& params, const PublicKey& pk,
                            const mpz_class& x, RngHandle& rng);

MemoryShare EvalLoad(const Params& params, const EvaluationKey& ek,
                     uint64_t id, const KdmCiphertext& c,
                     const Prf& prf = DefaultPrf());
MemoryShare EvalAddMem(const Params& params, const EvaluationKey& ek,
                       uint64_t id, const MemoryShare& lhs,
                       const MemoryShare& rhs, const Prf& prf = DefaultPrf());
KdmCiphertext EvalAddCt(const KdmCiphertext& lhs, const KdmCiphertext& rhs);
// constant must be an element of R_r.
MemoryShare EvalCMult(const Params& params, const EvaluationKey& ek,
                      uint64_t id, const RingElement& constant,
                      const KdmCiphertext& c, const Prf& prf = DefaultPrf());
MemoryShare EvalMult(const Params& params, const EvaluationKey& ek,
                     uint64_t id, const MemoryShare& mem,
                     const KdmCiphertext& c, const Prf& prf = DefaultPrf());
PartialResult EvalOutput(const Params& params, const MemoryShare& share);

// Runs a validated program with ids equal to instruction positions. Throws
// ValidationError if fewer ciphertexts than program inputs are supplied.
PartialResult Evaluate(const Params& params, const EvaluationKey& ek,
                       std::span<const KdmCiphertext> cts,
                       const ValidatedProgram& program,
                       const Prf& prf = DefaultPrf());

// Returns y = t1 + t2 mod r if tau1 + tau2 = s_hat * y in R_r, else nullopt.
std::optional<RingElement> Verify(const Params& params,
                                  const VerificationKey& vk,
                                  const PartialResult& y1,
                                  const PartialResult& y2);

// Embeds an R_r constant into R_q through its centered lift.
RingElement LiftFromR(const Params& params, const RingElement& x);

}  // namespace vhss

#endif  // VHSS_VHSS_H_
