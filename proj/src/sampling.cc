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

#include "vhss/sampling.h"

#include <openssl/evp.h>
#include <openssl/rand.h>
#include <openssl/sha.h>

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "vhss/errors.h"

namespace vhss {

namespace {

constexpr size_t kRngBufferBytes = 4096;

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

CipherCtx NewStreamCipher(const EVP_CIPHER* cipher, const uint8_t* key,
                          const uint8_t* iv) {
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx || EVP_EncryptInit_ex(ctx.get(), cipher, nullptr, key, iv) != 1) {
    throw std::runtime_error("failed to initialize stream cipher");
  }
  return ctx;
}

void Keystream(EVP_CIPHER_CTX* ctx, std::span<uint8_t> out) {
  std::memset(out.data(), 0, out.size());
  int len = 0;
  if (EVP_EncryptUpdate(ctx, out.data(), &len, out.data(),
                        static_cast<int>(out.size())) != 1) {
    throw std::runtime_error("stream cipher failure");
  }
}

// Bytes per uniformly reduced coefficient: 64 bits of slack over bits(q).
size_t WideBytes(const Modulus& q) { return (q.bits() + 64 + 7) / 8; }

void ReduceLittleEndian(mpz_class& out, const uint8_t* bytes, size_t len,
                        const mpz_class& q) {
  mpz_import(out.get_mpz_t(), len, -1, 1, 0, 0, bytes);
  mpz_fdiv_r(out.get_mpz_t(), out.get_mpz_t(), q.get_mpz_t());
}

// cdt[i] = floor(2^64 * P[X <= i - bound]) for the rounded Gaussian
// truncated to [-bound, bound]; the final entry saturates.
std::vector<uint64_t> RoundedGaussianCdt(double sigma, long bound) {
  const long double s = sigma;
  auto phi = [&](long double x) {
    return 0.5L * std::erfc(-x / (s * std::sqrt(2.0L)));
  };
  std::vector<long double> mass;
  long double total = 0;
  for (long k = -bound; k <= bound; ++k) {
    long double m = phi(k + 0.5L) - phi(k - 0.5L);
    mass.push_back(m);
    total += m;
  }
  std::vector<uint64_t> cdt;
  long double acc = 0;
  const long double scale = std::ldexp(1.0L, 64);
  for (size_t i = 0; i < mass.size(); ++i) {
    acc += mass[i] / total;
    long double v = std::floor(acc * scale);
    cdt.push_back(v >= scale ? UINT64_MAX : static_cast<uint64_t>(v));
  }
  cdt.back() = UINT64_MAX;
  return cdt;
}

}  // namespace

struct RngHandle::State {
  CipherCtx ctx;
  std::array<uint8_t, kRngBufferBytes> buffer{};
  size_t pos = kRngBufferBytes;

  void Refill() {
    Keystream(ctx.get(), buffer);
    pos = 0;
  }
};

RngHandle::RngHandle(const Seed& seed) : state_(std::make_unique<State>()) {
  const std::array<uint8_t, 16> iv{};
  state_->ctx = NewStreamCipher(EVP_chacha20(), seed.data(), iv.data());
}

RngHandle RngHandle::FromOsEntropy() {
  Seed seed;
  if (RAND_bytes(seed.data(), static_cast<int>(seed.size())) != 1) {
    throw std::runtime_error("RAND_bytes failed");
  }
  return RngHandle(seed);
}

RngHandle::RngHandle(RngHandle&&) noexcept = default;
RngHandle& RngHandle::operator=(RngHandle&&) noexcept = default;
RngHandle::~RngHandle() = default;

void RngHandle::Fill(std::span<uint8_t> out) {
  size_t done = 0;
  while (done < out.size()) {
    if (state_->pos == kRngBufferBytes) state_->Refill();
    size_t take = std::min(out.size() - done, kRngBufferBytes - state_->pos);
    std::memcpy(out.data() + done, state_->buffer.data() + state_->pos, take);
    state_->pos += take;
    done += take;
  }
}

uint64_t RngHandle::NextU64() {
  std::array<uint8_t, 8> b;
  Fill(b);
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

uint64_t RngHandle::UniformBelow(uint64_t bound) {
  if (bound == 0) throw ParameterError("UniformBelow: bound must be positive");
  // Reject the top partial block so every residue is equally likely.
  const uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  for (;;) {
    uint64_t v = NextU64();
    if (v <= limit) return v % bound;
  }
}

mpz_class RngHandle::UniformMod(const mpz_class& q) {
  const size_t width = (mpz_sizeinbase(q.get_mpz_t(), 2) + 64 + 7) / 8;
  std::vector<uint8_t> bytes(width);
  Fill(bytes);
  mpz_class out;
  ReduceLittleEndian(out, bytes.data(), bytes.size(), q);
  return out;
}

Seed RngHandle::Fork() {
  Seed s;
  Fill(s);
  return s;
}

Seed DeriveSeed(const Seed& seed, std::string_view label) {
  std::vector<uint8_t> msg(seed.begin(), seed.end());
  msg.insert(msg.end(), label.begin(), label.end());
  Seed out;
  SHA256(msg.data(), msg.size(), out.data());
  return out;
}

PrfKey SamplePrfKey(RngHandle& rng) {
  PrfKey k;
  rng.Fill(k.bytes);
  return k;
}

RingPair AesCtrPrf::Expand(const PrfKey& key, uint64_t id, size_t n,
                           const Modulus& q) const {
  std::array<uint8_t, 16> iv{};
  for (int i = 0; i < 8; ++i) iv[i] = static_cast<uint8_t>(id >> (56 - 8 * i));
  CipherCtx ctx = NewStreamCipher(EVP_aes_128_ctr(), key.bytes.data(), iv.data());
  const size_t width = WideBytes(q);
  std::vector<uint8_t> stream(2 * n * width);
  Keystream(ctx.get(), stream);
  std::vector<mpz_class> first(n), second(n);
  for (size_t i = 0; i < n; ++i) {
    ReduceLittleEndian(first[i], stream.data() + i * width, width, q.value());
    ReduceLittleEndian(second[i], stream.data() + (n + i) * width, width,
                       q.value());
  }
  return {RingElement::FromCanonical(n, q, std::move(first)),
          RingElement::FromCanonical(n, q, std::move(second))};
}

RingPair ZeroPrf::Expand(const PrfKey&, uint64_t, size_t n,
                         const Modulus& q) const {
  return {RingElement::Zero(n, q), RingElement::Zero(n, q)};
}

const Prf& DefaultPrf() {
  static const AesCtrPrf prf;
  return prf;
}

RingElement SampleUniform(size_t n, const Modulus& q, RngHandle& rng) {
  const size_t width = WideBytes(q);
  std::vector<uint8_t> bytes(n * width);
  rng.Fill(bytes);
  std::vector<mpz_class> coeffs(n);
  for (size_t i = 0; i < n; ++i) {
    ReduceLittleEndian(coeffs[i], bytes.data() + i * width, width, q.value());
  }
  return RingElement::FromCanonical(n, q, std::move(coeffs));
}

RingElement SampleSk(size_t n, size_t h_sk, const Modulus& q, RngHandle& rng) {
  if (h_sk == 0 || h_sk > n) {
    throw ParameterError("sample_sk: need 0 < h_sk <= N");
  }
  // Partial Fisher-Yates: the first h_sk slots form a uniform subset.
  std::vector<size_t> positions(n);
  for (size_t i = 0; i < n; ++i) positions[i] = i;
  for (size_t i = 0; i < h_sk; ++i) {
    size_t j = i + rng.UniformBelow(n - i);
    std::swap(positions[i], positions[j]);
  }
  std::vector<mpz_class> coeffs(n);
  const mpz_class minus_one = q.value() - 1;
  for (size_t i = 0; i < h_sk; ++i) {
    coeffs[positions[i]] = (rng.NextU64() & 1) ? minus_one : mpz_class(1);
  }
  return RingElement::FromCanonical(n, q, std::move(coeffs));
}

RingElement SampleErr(size_t n, double sigma, const Modulus& q,
                      RngHandle& rng) {
  if (!(sigma > 0)) throw ParameterError("sample_err: sigma must be positive");
  const long bound = static_cast<long>(std::floor(8.0 * sigma));
  RingElement zero = RingElement::Zero(n, q);
  if (bound == 0) return zero;
  const std::vector<uint64_t> cdt = RoundedGaussianCdt(sigma, bound);
  std::vector<mpz_class> values(n);
  for (size_t i = 0; i < n; ++i) {
    const uint64_t u = rng.NextU64();
    size_t idx = 0;
    while (idx + 1 < cdt.size() && u >= cdt[idx]) ++idx;
    values[i] = static_cast<long>(idx) - bound;
  }
  return RingElement::FromIntegers(n, q, values);
}

}  // namespace vhss
