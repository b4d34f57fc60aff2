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

// Scheme parameters, their derivation from a plaintext bound, and the exact
// correctness lower bound for a program of a given size.

#ifndef VHSS_PARAMS_H_
#define VHSS_PARAMS_H_

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vhss/ring.h"

namespace vhss {

struct Params {
  size_t n;
  Modulus p;
  Modulus q;
  Modulus r;  // plaintext / output modulus
  uint32_t sigma;
  uint32_t h_sk;
  uint32_t b_sk;
  uint64_t b_err;
  uint64_t b_ct;
  uint32_t b_add;  // max ciphertexts summed before a decryption (P_inp+)
  mpz_class b_max;
  uint32_t kappa;
  // Fixed per-row figure carried with the standard table; never recomputed.
  std::optional<double> security_bits;

  friend bool operator==(const Params&, const Params&) = default;
};

// Throws ParameterError unless: N is a power of two, p | q, 1 <= h_sk <= N,
// b_sk == 1, b_err == 8 sigma, b_ct == b_err (2 h_sk + 1), b_add >= 1,
// 2 <= r <= b_max.
void CheckParams(const Params& params);

// Builds a checked parameter set with explicitly chosen moduli. B_err and
// B_ct follow from sigma and h_sk.
Params MakeParams(size_t n, const mpz_class& p, const mpz_class& q,
                  const mpz_class& r, uint32_t sigma, uint32_t h_sk,
                  uint32_t b_add, const mpz_class& b_max, uint32_t kappa = 40);

struct ParamRequest {
  mpz_class b_max;
  uint32_t kappa = 40;
  uint32_t sigma = 8;
  uint32_t b_add = 1;
  std::optional<size_t> n = std::nullopt;
  // Output modulus; defaults to b_max.
  std::optional<mpz_class> r = std::nullopt;
};

// h_sk = N/2, B_err = 8 sigma, B_ct = B_err (2 h_sk + 1),
// p = N * B_max * h_sk * 2^(kappa+2) (rounded up to a power of two),
// q = p * 2^k for the least k with q >= 2^(kappa+3) * p * N^2 * B_max * B_ct.
//
// The exponent kappa + 3 bounds the dominant decryption error term
// N^2 B_max B_ct p/q by 2^-kappa and reproduces every tabulated (lg p, lg q)
// pair. A negative exponent would not bound it at all.
//
// If n is omitted, b_max must be one of the six tabulated bounds.
Params DeriveParams(const ParamRequest& request);

// The six tabulated rows (B_max = 2, 2^16, 2^32, 2^64, 2^128, 2^256).
std::vector<Params> Table2Profiles();

// Fast, INSECURE profile for tests: N = 8, B_max = 2^16, sigma = 3,
// kappa = 20, B_add = 2 (p = 2^43, q = 2^96). r defaults to B_max.
Params ToyProfile(std::optional<mpz_class> r = std::nullopt);

// Resolves "toy", "toy:<r>" and "table2:<B_max>" (B_max as decimal or 2^k).
Params ProfileByName(const std::string& name);

// Parses a non-negative decimal integer or "a^b". Throws ParameterError.
mpz_class ParseBigInt(const std::string& text);

// 1 - N(B_max+1)/q - 4 size N^2 P_inp+ B_max (B_ct p/q + B_sk^2/p)
//   - 4 size N (p/q + 1/p), evaluated exactly. PRF advantage is omitted.
// Throws ParameterError if size_f == 0.
mpq_class CorrectnessBound(const Params& params, uint64_t size_f);

// Success probability lower bound for one two-share distributed decryption:
// 1 - N (N B_add |x| B_ct p/q + |x m|/p + p/q + 1/p).
mpq_class DistributedDecryptionBound(const Params& params,
                                     const mpz_class& x_norm,
                                     const mpz_class& xm_norm);

// floor(log2(v)) for v >= 1, exact.
size_t Log2Floor(const mpz_class& v);

// Canonical text table of one or more parameter sets.
std::string FormatParamsTable(const std::vector<Params>& rows);

}  // namespace vhss

#endif  // VHSS_PARAMS_H_
