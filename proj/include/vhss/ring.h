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

// Exact arithmetic in R_q = Z_q[X]/(X^N + 1) with arbitrary-precision q.
//
// Coefficients are always stored as canonical representatives in [0, q).
// The centered view used by rounding and modulus switching maps c to c when
// c <= floor(q/2) and to c - q otherwise, so the centered interval is
// (-q/2, q/2] for even q and the balanced set for odd q.

#ifndef VHSS_RING_H_
#define VHSS_RING_H_

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <vector>

namespace vhss {

class Modulus {
 public:
  // Throws ParameterError if value < 2.
  explicit Modulus(mpz_class value);
  explicit Modulus(unsigned long value) : Modulus(mpz_class(value)) {}

  const mpz_class& value() const { return value_; }
  // floor(value / 2): the largest coefficient whose centered view is >= 0.
  const mpz_class& half() const { return half_; }
  size_t bits() const { return bits_; }
  // Fixed serialized width of one coefficient.
  size_t byte_width() const { return (bits_ + 7) / 8; }

  bool Divides(const Modulus& other) const;

  friend bool operator==(const Modulus& a, const Modulus& b) {
    return a.value_ == b.value_;
  }

 private:
  mpz_class value_;
  mpz_class half_;
  size_t bits_;
};

class RingElement {
 public:
  // Throws ParameterError unless n is a positive power of two.
  static RingElement Zero(size_t n, const Modulus& modulus);
  static RingElement One(size_t n, const Modulus& modulus);
  // X^i for 0 <= i < n.
  static RingElement Monomial(size_t n, const Modulus& modulus, size_t i);
  // Reduces arbitrary (possibly negative) integers into canonical form. Fewer
  // than n values are zero-padded; more than n is a DimensionError.
  static RingElement FromIntegers(size_t n, const Modulus& modulus,
                                  std::span<const mpz_class> values);
  static RingElement FromIntegers(size_t n, const Modulus& modulus,
                                  std::initializer_list<long> values);
  // Requires every value to already be canonical; throws DomainError
  // otherwise.
  static RingElement FromCanonical(size_t n, const Modulus& modulus,
                                   std::vector<mpz_class> coeffs);
  // Constant polynomial with the given integer value.
  static RingElement Constant(size_t n, const Modulus& modulus,
                              const mpz_class& value);

  size_t degree_bound() const { return coeffs_.size(); }
  const Modulus& modulus() const { return modulus_; }
  std::span<const mpz_class> coeffs() const { return coeffs_; }
  const mpz_class& operator[](size_t i) const { return coeffs_[i]; }

  bool IsZero() const;
  // True when every coefficient except the constant term is zero.
  bool IsConstant() const;
  // True when both operands live in the same ring.
  bool SameRing(const RingElement& other) const;

  RingElement& operator+=(const RingElement& other);
  RingElement& operator-=(const RingElement& other);

  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.modulus_ == b.modulus_ && a.coeffs_ == b.coeffs_;
  }

 private:
  RingElement(const Modulus& modulus, std::vector<mpz_class> coeffs)
      : modulus_(modulus), coeffs_(std::move(coeffs)) {}

  friend RingElement Mul(const RingElement&, const RingElement&);
  friend RingElement MulSchoolbook(const RingElement&, const RingElement&);
  friend RingElement MulNtt(const RingElement&, const RingElement&);
  friend RingElement InnerProduct2(const RingElement&, const RingElement&,
                                   const RingElement&, const RingElement&);
  friend RingElement Neg(const RingElement&);
  friend RingElement ScalarMul(const RingElement&, const RingElement&);
  friend RingElement RoundScale(const RingElement&, const Modulus&);
  friend RingElement ReduceTo(const RingElement&, const Modulus&);

  Modulus modulus_;
  std::vector<mpz_class> coeffs_;
};

// An element of R_q^2, e.g. a key share or one column of a KDM ciphertext.
struct RingPair {
  RingElement first;
  RingElement second;

  friend bool operator==(const RingPair&, const RingPair&) = default;
};

// All binary operations throw DimensionError on mismatched N or modulus.
RingElement Add(const RingElement& a, const RingElement& b);
RingElement Sub(const RingElement& a, const RingElement& b);
RingElement Neg(const RingElement& a);

// Negacyclic product. Dispatches to schoolbook for small N and to the
// multi-prime NTT otherwise; both paths are exact.
RingElement Mul(const RingElement& a, const RingElement& b);
// Reference O(N^2) negacyclic convolution.
RingElement MulSchoolbook(const RingElement& a, const RingElement& b);
// Exact product through an RNS of NTT-friendly 62-bit primes, followed by CRT
// reconstruction and reduction mod q. Valid for every N and q.
RingElement MulNtt(const RingElement& a, const RingElement& b);
// a0*b0 + a1*b1 with a single inverse transform.
RingElement InnerProduct2(const RingElement& a0, const RingElement& b0,
                          const RingElement& a1, const RingElement& b1);

// c * a where c is a plaintext constant already embedded in a's ring. Equal
// to Mul(c, a); constant polynomials take a coefficient-wise fast path.
RingElement ScalarMul(const RingElement& c, const RingElement& a);

inline RingElement operator+(const RingElement& a, const RingElement& b) {
  return Add(a, b);
}
inline RingElement operator-(const RingElement& a, const RingElement& b) {
  return Sub(a, b);
}
inline RingElement operator-(const RingElement& a) { return Neg(a); }
inline RingElement operator*(const RingElement& a, const RingElement& b) {
  return Mul(a, b);
}

inline RingPair operator+(const RingPair& a, const RingPair& b) {
  return {a.first + b.first, a.second + b.second};
}
inline RingPair operator-(const RingPair& a, const RingPair& b) {
  return {a.first - b.first, a.second - b.second};
}

// Centered representative of a canonical residue.
mpz_class CenteredValue(const mpz_class& c, const Modulus& modulus);
std::vector<mpz_class> CenteredLift(const RingElement& a);

// Per coefficient: round((p/q) * centered(c)) with ties toward +infinity,
// reduced mod p. Throws ParameterError unless p divides q.
RingElement RoundScale(const RingElement& a, const Modulus& target);

// Per coefficient: centered lift over the source modulus, then canonical
// reduction mod target. Target need not divide the source modulus.
RingElement ReduceTo(const RingElement& a, const Modulus& target);

// max |centered(c_i)|.
mpz_class InfNorm(const RingElement& a);

bool IsPowerOfTwo(size_t n);

}  // namespace vhss

#endif  // VHSS_RING_H_
