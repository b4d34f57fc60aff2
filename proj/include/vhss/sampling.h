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

// Randomness sources: uniform ring elements, the sparse ternary secret
// distribution, the rounded Gaussian error distribution and the PRF that
// re-randomizes memory shares.

#ifndef VHSS_SAMPLING_H_
#define VHSS_SAMPLING_H_

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>

#include "vhss/ring.h"

namespace vhss {

using Seed = std::array<uint8_t, 32>;

// Deterministic generator (ChaCha20 keystream keyed by a 32-byte seed). Same
// seed, same draws. Move-only; confine to one thread at a time.
class RngHandle {
 public:
  explicit RngHandle(const Seed& seed);
  static RngHandle FromOsEntropy();

  RngHandle(RngHandle&&) noexcept;
  RngHandle& operator=(RngHandle&&) noexcept;
  RngHandle(const RngHandle&) = delete;
  RngHandle& operator=(const RngHandle&) = delete;
  ~RngHandle();

  void Fill(std::span<uint8_t> out);
  uint64_t NextU64();
  // Uniform in [0, bound) by rejection. bound > 0.
  uint64_t UniformBelow(uint64_t bound);
  // Uniform in [0, q) up to statistical distance 2^-64.
  mpz_class UniformMod(const mpz_class& q);
  // A fresh seed for an independent sub-stream.
  Seed Fork();

 private:
  struct State;
  std::unique_ptr<State> state_;
};

// SHA-256(seed || label): domain-separated seeds for independent streams.
Seed DeriveSeed(const Seed& seed, std::string_view label);

struct PrfKey {
  std::array<uint8_t, 16> bytes{};
  friend bool operator==(const PrfKey&, const PrfKey&) = default;
};

PrfKey SamplePrfKey(RngHandle& rng);

// PRF : K x N -> R_q^2.
class Prf {
 public:
  virtual ~Prf() = default;
  virtual RingPair Expand(const PrfKey& key, uint64_t id, size_t n,
                          const Modulus& q) const = 0;
};

// AES-128 in counter mode, IV = big-endian id || 0^64. Each coefficient
// consumes ceil((bits(q) + 64) / 8) keystream bytes, read little-endian and
// reduced mod q.
class AesCtrPrf final : public Prf {
 public:
  RingPair Expand(const PrfKey& key, uint64_t id, size_t n,
                  const Modulus& q) const override;
};

// Always returns (0, 0). Only for ablation tests: shares stop being masked
// but reconstructed sums do not change.
class ZeroPrf final : public Prf {
 public:
  RingPair Expand(const PrfKey& key, uint64_t id, size_t n,
                  const Modulus& q) const override;
};

const Prf& DefaultPrf();

inline RingPair PrfExpand(const PrfKey& key, uint64_t id, size_t n,
                          const Modulus& q) {
  return DefaultPrf().Expand(key, id, n, q);
}

RingElement SampleUniform(size_t n, const Modulus& q, RngHandle& rng);

// Exactly h_sk coefficients nonzero, each +-1, support uniform among all
// h_sk-subsets. Throws ParameterError unless 0 < h_sk <= n.
RingElement SampleSk(size_t n, size_t h_sk, const Modulus& q, RngHandle& rng);

// Rounded Gaussian with standard deviation sigma, conditioned on
// |value| <= 8 sigma (drawn by inversion of a 64-bit CDF table over the
// integer support). Throws ParameterError unless sigma > 0.
RingElement SampleErr(size_t n, double sigma, const Modulus& q,
                      RngHandle& rng);

}  // namespace vhss

#endif  // VHSS_SAMPLING_H_
