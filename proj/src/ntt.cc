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

#include "ntt.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "vhss/errors.h"

namespace vhss::internal {

namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

constexpr int kPrimeLogStride = 17;  // supports N up to 2^16
constexpr size_t kMaxN = size_t{1} << (kPrimeLogStride - 1);

u64 MulMod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 PowMod(u64 base, u64 exp, u64 m) {
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = MulMod(result, base, m);
    base = MulMod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Shoup precomputation: floor(w * 2^64 / p).
u64 ShoupOf(u64 w, u64 p) {
  return static_cast<u64>((static_cast<u128>(w) << 64) / p);
}

// Returns w * a mod p, given w_shoup = ShoupOf(w, p). Requires p < 2^63.
inline u64 MulShoup(u64 a, u64 w, u64 w_shoup, u64 p) {
  u64 q = static_cast<u64>((static_cast<u128>(w_shoup) * a) >> 64);
  u64 r = w * a - q * p;
  return r >= p ? r - p : r;
}

size_t BitReverse(size_t x, int bits) {
  size_t r = 0;
  for (int i = 0; i < bits; ++i) {
    r = (r << 1) | ((x >> i) & 1);
  }
  return r;
}

int Log2(size_t n) {
  int l = 0;
  while ((size_t{1} << l) < n) ++l;
  return l;
}

// Primes below 2^62 congruent to 1 mod 2^17, in descending order.
std::vector<u64> PrimesUpTo(size_t count) {
  static std::mutex mu;
  static std::vector<u64> primes;
  std::lock_guard<std::mutex> lock(mu);
  const u64 step = u64{1} << kPrimeLogStride;
  u64 candidate = ((u64{1} << 62) / step) * step + 1;
  if (!primes.empty()) candidate = primes.back();
  while (primes.size() < count) {
    candidate -= step;
    if (IsPrime64(candidate)) primes.push_back(candidate);
  }
  return {primes.begin(), primes.begin() + count};
}

struct NttTable {
  size_t n;
  int log_n;
  u64 p;
  std::vector<u64> psi_rev, psi_rev_shoup;          // psi^bitrev(i)
  std::vector<u64> psi_inv_rev, psi_inv_rev_shoup;  // psi^-bitrev(i)
  u64 n_inv, n_inv_shoup;

  NttTable(size_t n_in, u64 prime) : n(n_in), log_n(Log2(n_in)), p(prime) {
    const u64 order = 2 * n;
    u64 psi = 0;
    for (u64 g = 2;; ++g) {
      u64 cand = PowMod(g, (p - 1) / order, p);
      // psi is a primitive 2n-th root iff psi^n = -1.
      if (PowMod(cand, n, p) == p - 1) {
        psi = cand;
        break;
      }
    }
    const u64 psi_inv = PowMod(psi, p - 2, p);
    psi_rev.resize(n);
    psi_inv_rev.resize(n);
    psi_rev_shoup.resize(n);
    psi_inv_rev_shoup.resize(n);
    u64 pw = 1, pw_inv = 1;
    for (size_t i = 0; i < n; ++i) {
      size_t j = BitReverse(i, log_n);
      psi_rev[j] = pw;
      psi_inv_rev[j] = pw_inv;
      pw = MulMod(pw, psi, p);
      pw_inv = MulMod(pw_inv, psi_inv, p);
    }
    for (size_t i = 0; i < n; ++i) {
      psi_rev_shoup[i] = ShoupOf(psi_rev[i], p);
      psi_inv_rev_shoup[i] = ShoupOf(psi_inv_rev[i], p);
    }
    n_inv = PowMod(n, p - 2, p);
    n_inv_shoup = ShoupOf(n_inv, p);
  }

  void Forward(std::span<u64> a) const {
    size_t t = n;
    for (size_t m = 1; m < n; m <<= 1) {
      t >>= 1;
      for (size_t i = 0; i < m; ++i) {
        const size_t j1 = 2 * i * t;
        const u64 w = psi_rev[m + i];
        const u64 ws = psi_rev_shoup[m + i];
        for (size_t j = j1; j < j1 + t; ++j) {
          const u64 u = a[j];
          const u64 v = MulShoup(a[j + t], w, ws, p);
          const u64 s = u + v;
          a[j] = s >= p ? s - p : s;
          a[j + t] = u >= v ? u - v : u + p - v;
        }
      }
    }
  }

  void Inverse(std::span<u64> a) const {
    size_t t = 1;
    for (size_t m = n; m > 1; m >>= 1) {
      const size_t h = m >> 1;
      size_t j1 = 0;
      for (size_t i = 0; i < h; ++i) {
        const u64 w = psi_inv_rev[h + i];
        const u64 ws = psi_inv_rev_shoup[h + i];
        for (size_t j = j1; j < j1 + t; ++j) {
          const u64 u = a[j];
          const u64 v = a[j + t];
          const u64 s = u + v;
          a[j] = s >= p ? s - p : s;
          a[j + t] = MulShoup(u >= v ? u - v : u + p - v, w, ws, p);
        }
        j1 += 2 * t;
      }
      t <<= 1;
    }
    for (size_t j = 0; j < n; ++j) a[j] = MulShoup(a[j], n_inv, n_inv_shoup, p);
  }
};

// Garner constants for the first k primes of the shared list.
struct CrtPlan {
  std::vector<u64> primes;
  std::vector<std::vector<u64>> inv;  // inv[j][i] = p_j^-1 mod p_i, j < i
  mpz_class product;
  mpz_class half_product;

  explicit CrtPlan(size_t k) {
    primes = PrimesUpTo(k);
    inv.assign(k, std::vector<u64>(k, 0));
    for (size_t j = 0; j < k; ++j) {
      for (size_t i = j + 1; i < k; ++i) {
        inv[j][i] = PowMod(primes[j] % primes[i], primes[i] - 2, primes[i]);
      }
    }
    product = 1;
    for (u64 p : primes) product *= mpz_class(static_cast<unsigned long>(p));
    half_product = product / 2;
  }
};

template <typename Key, typename Value, typename Make>
std::shared_ptr<const Value> Memo(std::map<Key, std::shared_ptr<const Value>>& m,
                                  std::mutex& mu, const Key& key, Make make) {
  std::lock_guard<std::mutex> lock(mu);
  auto it = m.find(key);
  if (it != m.end()) return it->second;
  auto value = std::make_shared<const Value>(make());
  m.emplace(key, value);
  return value;
}

std::shared_ptr<const NttTable> TableFor(size_t n, u64 prime) {
  static std::mutex mu;
  static std::map<std::pair<size_t, u64>, std::shared_ptr<const NttTable>> m;
  return Memo(m, mu, std::make_pair(n, prime),
              [&] { return NttTable(n, prime); });
}

std::shared_ptr<const CrtPlan> PlanFor(size_t k) {
  static std::mutex mu;
  static std::map<size_t, std::shared_ptr<const CrtPlan>> m;
  return Memo(m, mu, k, [&] { return CrtPlan(k); });
}

}  // namespace

bool IsPrime64(uint64_t n) {
  if (n < 2) return false;
  for (u64 small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = PowMod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = MulMod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<mpz_class> NegacyclicDotModQ(
    std::span<const std::span<const mpz_class>> a,
    std::span<const std::span<const mpz_class>> b, const mpz_class& q) {
  const size_t terms = a.size();
  if (terms == 0 || b.size() != terms) {
    throw DimensionError("NegacyclicDotModQ: operand count mismatch");
  }
  const size_t n = a[0].size();
  if (n == 0 || (n & (n - 1)) != 0 || n > kMaxN) {
    throw DimensionError("NegacyclicDotModQ: unsupported degree bound");
  }
  // |result| < terms * n * q^2; the CRT range must cover twice that.
  const size_t q_bits = mpz_sizeinbase(q.get_mpz_t(), 2);
  const size_t need_bits = 2 * q_bits + static_cast<size_t>(Log2(n)) +
                           static_cast<size_t>(Log2(terms)) + 2;
  const size_t k = (need_bits + 60) / 61;
  auto plan = PlanFor(k);

  // residues[i] holds the accumulated NTT-domain product for prime i.
  std::vector<std::vector<u64>> acc(k, std::vector<u64>(n, 0));
  std::vector<u64> ra(n), rb(n);
  for (size_t i = 0; i < k; ++i) {
    const u64 p = plan->primes[i];
    auto table = TableFor(n, p);
    for (size_t t = 0; t < terms; ++t) {
      for (size_t j = 0; j < n; ++j) {
        ra[j] = mpz_fdiv_ui(a[t][j].get_mpz_t(), p);
        rb[j] = mpz_fdiv_ui(b[t][j].get_mpz_t(), p);
      }
      table->Forward(ra);
      table->Forward(rb);
      auto& dst = acc[i];
      for (size_t j = 0; j < n; ++j) {
        u64 s = dst[j] + MulMod(ra[j], rb[j], p);
        dst[j] = s >= p ? s - p : s;
      }
    }
    table->Inverse(acc[i]);
  }

  std::vector<mpz_class> out(n);
  std::vector<u64> digits(k);
  mpz_class value;
  for (size_t j = 0; j < n; ++j) {
    for (size_t i = 0; i < k; ++i) {
      const u64 p = plan->primes[i];
      u64 v = acc[i][j];
      for (size_t l = 0; l < i; ++l) {
        u64 d = digits[l] % p;
        v = v >= d ? v - d : v + p - d;
        v = MulMod(v, plan->inv[l][i], p);
      }
      digits[i] = v;
    }
    value = static_cast<unsigned long>(digits[k - 1]);
    for (size_t i = k - 1; i-- > 0;) {
      mpz_mul_ui(value.get_mpz_t(), value.get_mpz_t(), plan->primes[i]);
      mpz_add_ui(value.get_mpz_t(), value.get_mpz_t(), digits[i]);
    }
    if (value > plan->half_product) value -= plan->product;
    mpz_fdiv_r(out[j].get_mpz_t(), value.get_mpz_t(), q.get_mpz_t());
  }
  return out;
}

}  // namespace vhss::internal
