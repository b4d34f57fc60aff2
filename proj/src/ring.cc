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

#include "vhss/ring.h"

#include <algorithm>
#include <array>
#include <string>
#include <utility>

#include "ntt.h"
#include "vhss/errors.h"

namespace vhss {

namespace {

// Below this degree bound the schoolbook product beats the NTT set-up cost.
constexpr size_t kSchoolbookMaxN = 16;

void CheckSameRing(const RingElement& a, const RingElement& b,
                   const char* op) {
  if (a.degree_bound() != b.degree_bound()) {
    throw DimensionError(std::string(op) + ": degree bound mismatch (" +
                         std::to_string(a.degree_bound()) + " vs " +
                         std::to_string(b.degree_bound()) + ")");
  }
  if (!(a.modulus() == b.modulus())) {
    throw DimensionError(std::string(op) + ": modulus mismatch");
  }
}

void CheckDegree(size_t n) {
  if (!IsPowerOfTwo(n)) {
    throw ParameterError("degree bound must be a positive power of two, got " +
                         std::to_string(n));
  }
}

}  // namespace

bool IsPowerOfTwo(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

Modulus::Modulus(mpz_class value) : value_(std::move(value)) {
  if (value_ < 2) throw ParameterError("modulus must be at least 2");
  half_ = value_ / 2;
  bits_ = mpz_sizeinbase(value_.get_mpz_t(), 2);
}

bool Modulus::Divides(const Modulus& other) const {
  return mpz_divisible_p(other.value_.get_mpz_t(), value_.get_mpz_t()) != 0;
}

RingElement RingElement::Zero(size_t n, const Modulus& modulus) {
  CheckDegree(n);
  return RingElement(modulus, std::vector<mpz_class>(n));
}

RingElement RingElement::One(size_t n, const Modulus& modulus) {
  return Constant(n, modulus, 1);
}

RingElement RingElement::Monomial(size_t n, const Modulus& modulus, size_t i) {
  if (i >= n) throw DimensionError("monomial exponent out of range");
  RingElement r = Zero(n, modulus);
  r.coeffs_[i] = 1;
  return r;
}

RingElement RingElement::Constant(size_t n, const Modulus& modulus,
                                  const mpz_class& value) {
  RingElement r = Zero(n, modulus);
  mpz_fdiv_r(r.coeffs_[0].get_mpz_t(), value.get_mpz_t(),
             modulus.value().get_mpz_t());
  return r;
}

RingElement RingElement::FromIntegers(size_t n, const Modulus& modulus,
                                      std::span<const mpz_class> values) {
  if (values.size() > n) {
    throw DimensionError("more coefficients than the degree bound");
  }
  RingElement r = Zero(n, modulus);
  for (size_t i = 0; i < values.size(); ++i) {
    mpz_fdiv_r(r.coeffs_[i].get_mpz_t(), values[i].get_mpz_t(),
               modulus.value().get_mpz_t());
  }
  return r;
}

RingElement RingElement::FromIntegers(size_t n, const Modulus& modulus,
                                      std::initializer_list<long> values) {
  std::vector<mpz_class> v;
  v.reserve(values.size());
  for (long x : values) v.emplace_back(x);
  return FromIntegers(n, modulus, v);
}

RingElement RingElement::FromCanonical(size_t n, const Modulus& modulus,
                                       std::vector<mpz_class> coeffs) {
  CheckDegree(n);
  if (coeffs.size() != n) {
    throw DimensionError("coefficient count does not match degree bound");
  }
  for (const auto& c : coeffs) {
    if (c < 0 || c >= modulus.value()) {
      throw DomainError("coefficient is not a canonical residue");
    }
  }
  return RingElement(modulus, std::move(coeffs));
}

bool RingElement::IsZero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const mpz_class& c) { return c == 0; });
}

bool RingElement::IsConstant() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(),
                     [](const mpz_class& c) { return c == 0; });
}

bool RingElement::SameRing(const RingElement& other) const {
  return degree_bound() == other.degree_bound() && modulus_ == other.modulus_;
}

RingElement& RingElement::operator+=(const RingElement& other) {
  CheckSameRing(*this, other, "add");
  const mpz_class& q = modulus_.value();
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    coeffs_[i] += other.coeffs_[i];
    if (coeffs_[i] >= q) coeffs_[i] -= q;
  }
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& other) {
  CheckSameRing(*this, other, "sub");
  const mpz_class& q = modulus_.value();
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    coeffs_[i] -= other.coeffs_[i];
    if (coeffs_[i] < 0) coeffs_[i] += q;
  }
  return *this;
}

RingElement Add(const RingElement& a, const RingElement& b) {
  RingElement r = a;
  r += b;
  return r;
}

RingElement Sub(const RingElement& a, const RingElement& b) {
  RingElement r = a;
  r -= b;
  return r;
}

RingElement Neg(const RingElement& a) {
  RingElement r = a;
  const mpz_class& q = a.modulus().value();
  for (auto& c : r.coeffs_) {
    if (c != 0) c = q - c;
  }
  return r;
}

RingElement MulSchoolbook(const RingElement& a, const RingElement& b) {
  CheckSameRing(a, b, "mul");
  const size_t n = a.degree_bound();
  std::vector<mpz_class> acc(n);
  for (size_t i = 0; i < n; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (size_t j = 0; j < n; ++j) {
      const size_t k = i + j;
      // X^N = -1: terms past the degree bound wrap with a sign flip.
      if (k < n) {
        mpz_addmul(acc[k].get_mpz_t(), a.coeffs_[i].get_mpz_t(),
                   b.coeffs_[j].get_mpz_t());
      } else {
        mpz_submul(acc[k - n].get_mpz_t(), a.coeffs_[i].get_mpz_t(),
                   b.coeffs_[j].get_mpz_t());
      }
    }
  }
  for (auto& c : acc) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), a.modulus().value().get_mpz_t());
  }
  return RingElement(a.modulus(), std::move(acc));
}

RingElement MulNtt(const RingElement& a, const RingElement& b) {
  CheckSameRing(a, b, "mul");
  std::array<std::span<const mpz_class>, 1> lhs{a.coeffs()};
  std::array<std::span<const mpz_class>, 1> rhs{b.coeffs()};
  return RingElement(a.modulus(), internal::NegacyclicDotModQ(
                                      lhs, rhs, a.modulus().value()));
}

RingElement Mul(const RingElement& a, const RingElement& b) {
  if (a.degree_bound() <= kSchoolbookMaxN) return MulSchoolbook(a, b);
  return MulNtt(a, b);
}

RingElement InnerProduct2(const RingElement& a0, const RingElement& b0,
                          const RingElement& a1, const RingElement& b1) {
  CheckSameRing(a0, b0, "inner product");
  CheckSameRing(a0, a1, "inner product");
  CheckSameRing(a0, b1, "inner product");
  if (a0.degree_bound() <= kSchoolbookMaxN) {
    return Add(MulSchoolbook(a0, b0), MulSchoolbook(a1, b1));
  }
  std::array<std::span<const mpz_class>, 2> lhs{a0.coeffs(), a1.coeffs()};
  std::array<std::span<const mpz_class>, 2> rhs{b0.coeffs(), b1.coeffs()};
  return RingElement(a0.modulus(), internal::NegacyclicDotModQ(
                                       lhs, rhs, a0.modulus().value()));
}

RingElement ScalarMul(const RingElement& c, const RingElement& a) {
  CheckSameRing(c, a, "scalar mul");
  if (!c.IsConstant()) return Mul(c, a);
  RingElement r = a;
  const mpz_class& q = a.modulus().value();
  for (auto& x : r.coeffs_) {
    x *= c.coeffs_[0];
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), q.get_mpz_t());
  }
  return r;
}

mpz_class CenteredValue(const mpz_class& c, const Modulus& modulus) {
  return c > modulus.half() ? mpz_class(c - modulus.value()) : c;
}

std::vector<mpz_class> CenteredLift(const RingElement& a) {
  std::vector<mpz_class> out;
  out.reserve(a.degree_bound());
  for (const auto& c : a.coeffs()) out.push_back(CenteredValue(c, a.modulus()));
  return out;
}

RingElement RoundScale(const RingElement& a, const Modulus& target) {
  if (!target.Divides(a.modulus())) {
    throw ParameterError("round_scale: target modulus must divide q");
  }
  // round(v * p / q) = round(v / delta) = floor((2v + delta) / (2 delta)),
  // which sends exact halves toward +infinity.
  const mpz_class delta = a.modulus().value() / target.value();
  const mpz_class two_delta = 2 * delta;
  std::vector<mpz_class> out(a.degree_bound());
  mpz_class v;
  for (size_t i = 0; i < out.size(); ++i) {
    v = CenteredValue(a.coeffs_[i], a.modulus());
    v = 2 * v + delta;
    mpz_fdiv_q(v.get_mpz_t(), v.get_mpz_t(), two_delta.get_mpz_t());
    mpz_fdiv_r(out[i].get_mpz_t(), v.get_mpz_t(), target.value().get_mpz_t());
  }
  return RingElement(target, std::move(out));
}

RingElement ReduceTo(const RingElement& a, const Modulus& target) {
  std::vector<mpz_class> out(a.degree_bound());
  mpz_class v;
  for (size_t i = 0; i < out.size(); ++i) {
    v = CenteredValue(a.coeffs_[i], a.modulus());
    mpz_fdiv_r(out[i].get_mpz_t(), v.get_mpz_t(), target.value().get_mpz_t());
  }
  return RingElement(target, std::move(out));
}

mpz_class InfNorm(const RingElement& a) {
  mpz_class best = 0;
  for (const auto& c : a.coeffs()) {
    mpz_class v = abs(CenteredValue(c, a.modulus()));
    if (v > best) best = v;
  }
  return best;
}

}  // namespace vhss
