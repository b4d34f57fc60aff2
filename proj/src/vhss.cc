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

#include "vhss/vhss.h"

#include <map>
#include <variant>

#include "vhss/errors.h"

namespace vhss {

namespace {

void CheckKey(const EvaluationKey& ek) {
  if (ek.server != 1 && ek.server != 2) {
    throw DomainError("evaluation key has invalid server index");
  }
}

// (3 - 2b) * PRF(K, id): server 1 adds the mask, server 2 subtracts it.
RingPair SignedMask(const Params& params, const EvaluationKey& ek,
                    const PrfKey& key, uint64_t id, const Prf& prf) {
  RingPair mask = prf.Expand(key, id, params.n, params.q);
  if (ek.server == 2) return {-mask.first, -mask.second};
  return mask;
}

MemoryShare Mask(const Params& params, const EvaluationKey& ek, uint64_t id,
                 RingPair t, RingPair tau, const Prf& prf) {
  return {t + SignedMask(params, ek, ek.k1, id, prf),
          tau + SignedMask(params, ek, ek.k2, id, prf)};
}

RingPair Scale(const RingElement& c, const RingPair& v) {
  return {ScalarMul(c, v.first), ScalarMul(c, v.second)};
}

RingElement ConstantInR(const Params& params,
                        const std::vector<mpz_class>& coeffs) {
  return RingElement::FromIntegers(params.n, params.r, coeffs);
}

}  // namespace

RingElement LiftFromR(const Params& params, const RingElement& x) {
  if (!(x.modulus() == params.r) || x.degree_bound() != params.n) {
    throw DomainError("value must be an element of R_r");
  }
  return ReduceTo(x, params.q);
}

KeyBundle KeyGen(const Params& params, RngHandle& rng) {
  auto [pk, sk] = PkeGen(params, rng);
  RingElement s_hat = SampleSk(params.n, params.h_sk, params.q, rng);
  VerificationKey vk{s_hat, s_hat * sk.s1};
  RingPair sk_pair = sk.AsPair();
  RingPair vk_pair{vk.s_hat, vk.s_hat_s};
  RingPair s11{SampleUniform(params.n, params.q, rng),
               SampleUniform(params.n, params.q, rng)};
  RingPair s12{SampleUniform(params.n, params.q, rng),
               SampleUniform(params.n, params.q, rng)};
  PrfKey k1 = SamplePrfKey(rng);
  PrfKey k2 = SamplePrfKey(rng);
  EvaluationKey ek1{1, k1, k2, s11, s12};
  EvaluationKey ek2{2, k1, k2, sk_pair - s11, vk_pair - s12};
  return {std::move(pk), std::move(vk), std::move(ek1), std::move(ek2),
          std::move(sk)};
}

KdmCiphertext Encrypt(const Params& params, const PublicKey& pk,
                      const RingElement& x, RngHandle& rng) {
  if (!(x.modulus() == params.r) || x.degree_bound() != params.n) {
    throw DomainError("input must be an element of R_r");
  }
  return PkeOkdm(params, pk, ReduceTo(x, params.p), rng);
}

KdmCiphertext EncryptScalar(const Params& params, const PublicKey& pk,
                            const mpz_class& x, RngHandle& rng) {
  return Encrypt(params, pk, RingElement::Constant(params.n, params.r, x), rng);
}

MemoryShare EvalLoad(const Params& params, const EvaluationKey& ek,
                     uint64_t id, const KdmCiphertext& c, const Prf& prf) {
  CheckKey(ek);
  return Mask(params, ek, id, PkeDdecMatrix(params, ek.server, ek.sk_share, c),
              PkeDdecMatrix(params, ek.server, ek.vk_share, c), prf);
}

MemoryShare EvalAddMem(const Params& params, const EvaluationKey& ek,
                       uint64_t id, const MemoryShare& lhs,
                       const MemoryShare& rhs, const Prf& prf) {
  CheckKey(ek);
  return Mask(params, ek, id, lhs.t + rhs.t, lhs.tau + rhs.tau, prf);
}

KdmCiphertext EvalAddCt(const KdmCiphertext& lhs, const KdmCiphertext& rhs) {
  return lhs + rhs;
}

MemoryShare EvalCMult(const Params& params, const EvaluationKey& ek,
                      uint64_t id, const RingElement& constant,
                      const KdmCiphertext& c, const Prf& prf) {
  CheckKey(ek);
  const RingElement lifted = LiftFromR(params, constant);
  return Mask(params, ek, id,
              PkeDdecMatrix(params, ek.server, Scale(lifted, ek.sk_share), c),
              PkeDdecMatrix(params, ek.server, Scale(lifted, ek.vk_share), c),
              prf);
}

MemoryShare EvalMult(const Params& params, const EvaluationKey& ek,
                     uint64_t id, const MemoryShare& mem,
                     const KdmCiphertext& c, const Prf& prf) {
  CheckKey(ek);
  return Mask(params, ek, id, PkeDdecMatrix(params, ek.server, mem.t, c),
              PkeDdecMatrix(params, ek.server, mem.tau, c), prf);
}

PartialResult EvalOutput(const Params& params, const MemoryShare& share) {
  return {ReduceTo(share.t.first, params.r),
          ReduceTo(share.tau.first, params.r)};
}

PartialResult Evaluate(const Params& params, const EvaluationKey& ek,
                       std::span<const KdmCiphertext> cts,
                       const ValidatedProgram& program, const Prf& prf) {
  if (cts.size() < program.n_inputs) {
    throw ValidationError("program expects " +
                          std::to_string(program.n_inputs) +
                          " ciphertexts, got " + std::to_string(cts.size()));
  }
  std::map<uint32_t, KdmCiphertext> derived;
  std::map<uint32_t, MemoryShare> regs;
  auto ct = [&](CtId id) -> const KdmCiphertext& {
    if (auto it = derived.find(id.index); it != derived.end()) return it->second;
    if (id.index >= cts.size()) {
      throw ValidationError("unknown ciphertext ct" + std::to_string(id.index));
    }
    return cts[id.index];
  };
  auto reg = [&](RegId id) -> const MemoryShare& {
    auto it = regs.find(id.index);
    if (it == regs.end()) {
      throw ValidationError("unknown register r" + std::to_string(id.index));
    }
    return it->second;
  };

  const auto& instructions = program.program.instructions;
  for (uint64_t id = 0; id < instructions.size(); ++id) {
    const Instruction& ins = instructions[id];
    if (const auto* i = std::get_if<op::Load>(&ins)) {
      regs.insert_or_assign(i->dst.index,
                            EvalLoad(params, ek, id, ct(i->src), prf));
    } else if (const auto* i = std::get_if<op::AddMem>(&ins)) {
      regs.insert_or_assign(
          i->dst.index,
          EvalAddMem(params, ek, id, reg(i->lhs), reg(i->rhs), prf));
    } else if (const auto* i = std::get_if<op::AddCt>(&ins)) {
      derived.insert_or_assign(i->dst.index,
                               EvalAddCt(ct(i->lhs), ct(i->rhs)));
    } else if (const auto* i = std::get_if<op::CMult>(&ins)) {
      regs.insert_or_assign(
          i->dst.index, EvalCMult(params, ek, id,
                                  ConstantInR(params, i->constant),
                                  ct(i->src), prf));
    } else if (const auto* i = std::get_if<op::Mult>(&ins)) {
      regs.insert_or_assign(
          i->dst.index, EvalMult(params, ek, id, reg(i->mem), ct(i->src), prf));
    } else if (const auto* i = std::get_if<op::Output>(&ins)) {
      return EvalOutput(params, reg(i->src));
    }
  }
  throw ValidationError("program has no output instruction");
}

std::optional<RingElement> Verify(const Params& params,
                                  const VerificationKey& vk,
                                  const PartialResult& y1,
                                  const PartialResult& y2) {
  for (const RingElement* e : {&y1.t, &y1.tau, &y2.t, &y2.tau}) {
    if (!(e->modulus() == params.r) || e->degree_bound() != params.n) {
      throw DimensionError("partial result is not over R_r");
    }
  }
  RingElement y = y1.t + y2.t;
  RingElement tau = y1.tau + y2.tau;
  RingElement s_hat = ReduceTo(vk.s_hat, params.r);
  if (tau == Mul(s_hat, y)) return y;
  return std::nullopt;
}

}  // namespace vhss
