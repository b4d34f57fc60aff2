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

// Exact negacyclic products of big-integer polynomials through a residue
// number system of NTT-friendly primes p_i = 1 mod 2^17, p_i < 2^62.

#ifndef VHSS_SRC_NTT_H_
#define VHSS_SRC_NTT_H_

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <vector>

namespace vhss::internal {

// Returns sum_k a_k * b_k in Z[X]/(X^N + 1), reduced mod q. Every input
// coefficient must lie in [0, q). All spans have the same length N (a power
// of two, N <= 2^16).
std::vector<mpz_class> NegacyclicDotModQ(
    std::span<const std::span<const mpz_class>> a,
    std::span<const std::span<const mpz_class>> b, const mpz_class& q);

// Deterministic Miller-Rabin for 64-bit integers.
bool IsPrime64(uint64_t n);

}  // namespace vhss::internal

#endif  // VHSS_SRC_NTT_H_
