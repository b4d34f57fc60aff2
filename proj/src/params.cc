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

#include "vhss/params.h"

#include <array>
#include <cstdio>
#include <sstream>

#include "vhss/errors.h"

namespace vhss {

namespace {

struct TableRow {
  unsigned b_max_log2;
  size_t n;
  double security_bits;
};

constexpr std::array<TableRow, 6> kTable2 = {{
    {1, 4096, 117.1},
    {16, 4096, 86.5},
    {32, 8192, 198.7},
    {64, 8192, 128.9},
    {128, 16384, 214.0},
    {256, 16384, 96.7},
}};

mpz_class Pow2(size_t k) {
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, k);
  return v;
}

const TableRow* FindRow(const mpz_class& b_max) {
  for (const auto& row : kTable2) {
    if (Pow2(row.b_max_log2) == b_max) return &row;
  }
  return nullptr;
}

mpz_class NextPowerOfTwo(const mpz_class& v) {
  mpz_class p = 1;
  while (p < v) p *= 2;
  return p;
}

std::string FormatBigLog2(const mpz_class& v) {
  if (v > 0 && mpz_popcount(v.get_mpz_t()) == 1) {
    return "2^" + std::to_string(Log2Floor(v));
  }
  return v.get_str();
}

}  // namespace

size_t Log2Floor(const mpz_class& v) {
  if (v < 1) throw ParameterError("Log2Floor: argument must be >= 1");
  return mpz_sizeinbase(v.get_mpz_t(), 2) - 1;
}

void CheckParams(const Params& params) {
  if (!IsPowerOfTwo(params.n)) throw ParameterError("N must be a power of two");
  if (!params.p.Divides(params.q)) throw ParameterError("p must divide q");
  if (params.h_sk == 0 || params.h_sk > params.n) {
    throw ParameterError("h_sk must satisfy 0 < h_sk <= N");
  }
  if (params.sigma == 0) throw ParameterError("sigma must be positive");
  if (params.b_sk != 1) throw ParameterError("B_sk must be 1 for ternary keys");
  if (params.b_err != 8ull * params.sigma) {
    throw ParameterError("B_err must equal 8 sigma");
  }
  if (params.b_ct != params.b_err * (2ull * params.h_sk + 1)) {
    throw ParameterError("B_ct must equal B_err (2 h_sk + 1)");
  }
  if (params.b_add == 0) throw ParameterError("B_add must be at least 1");
  if (params.r.value() > params.b_max) {
    throw ParameterError("r must not exceed B_max");
  }
  if (params.kappa == 0) throw ParameterError("kappa must be at least 1");
}

Params MakeParams(size_t n, const mpz_class& p, const mpz_class& q,
                  const mpz_class& r, uint32_t sigma, uint32_t h_sk,
                  uint32_t b_add, const mpz_class& b_max, uint32_t kappa) {
  const uint64_t b_err = 8ull * sigma;
  Params params{
      .n = n,
      .p = Modulus(p),
      .q = Modulus(q),
      .r = Modulus(r),
      .sigma = sigma,
      .h_sk = h_sk,
      .b_sk = 1,
      .b_err = b_err,
      .b_ct = b_err * (2ull * h_sk + 1),
      .b_add = b_add,
      .b_max = b_max,
      .kappa = kappa,
      .security_bits = std::nullopt,
  };
  CheckParams(params);
  return params;
}

Params DeriveParams(const ParamRequest& request) {
  if (request.b_max < 2) throw ParameterError("B_max must be at least 2");
  if (request.kappa < 1) throw ParameterError("kappa must be at least 1");
  const TableRow* row = FindRow(request.b_max);
  size_t n;
  if (request.n) {
    n = *request.n;
  } else if (row != nullptr) {
    n = row->n;
  } else {
    throw ParameterError(
        "N must be given for B_max values outside the standard table");
  }
  if (!IsPowerOfTwo(n) || n < 2) {
    throw ParameterError("N must be a power of two >= 2");
  }
  const uint32_t h_sk = static_cast<uint32_t>(n / 2);
  const uint64_t b_err = 8ull * request.sigma;
  const uint64_t b_ct = b_err * (2ull * h_sk + 1);

  const mpz_class n_big(static_cast<unsigned long>(n));
  const mpz_class p = NextPowerOfTwo(n_big * request.b_max * h_sk *
                                     Pow2(request.kappa + 2));
  const mpz_class q_min = Pow2(request.kappa + 3) * p * n_big * n_big *
                          request.b_max * mpz_class(static_cast<unsigned long>(b_ct));
  mpz_class q = p;
  while (q < q_min) q *= 2;

  Params params = MakeParams(n, p, q, request.r.value_or(request.b_max),
                             request.sigma, h_sk, request.b_add,
                             request.b_max, request.kappa);
  if (row != nullptr && row->n == n && request.kappa == 40 &&
      request.sigma == 8) {
    params.security_bits = row->security_bits;
  }
  return params;
}

std::vector<Params> Table2Profiles() {
  std::vector<Params> out;
  for (const auto& row : kTable2) {
    out.push_back(DeriveParams({.b_max = Pow2(row.b_max_log2), .n = row.n}));
  }
  return out;
}

Params ToyProfile(std::optional<mpz_class> r) {
  return DeriveParams({.b_max = Pow2(16),
                       .kappa = 20,
                       .sigma = 3,
                       .b_add = 2,
                       .n = 8,
                       .r = std::move(r)});
}

mpz_class ParseBigInt(const std::string& text) {
  auto digits = [&](const std::string& part) {
    if (part.empty() || part.size() > 4096 ||
        part.find_first_not_of("0123456789") != std::string::npos) {
      throw ParameterError("not a non-negative integer: '" + text + "'");
    }
    return mpz_class(part, 10);
  };
  auto caret = text.find('^');
  if (caret == std::string::npos) return digits(text);
  mpz_class base = digits(text.substr(0, caret));
  mpz_class exp = digits(text.substr(caret + 1));
  if (exp > 65536) throw ParameterError("exponent too large: '" + text + "'");
  mpz_class v;
  mpz_pow_ui(v.get_mpz_t(), base.get_mpz_t(), exp.get_ui());
  return v;
}

Params ProfileByName(const std::string& name) {
  if (name == "toy") return ToyProfile();
  if (name.rfind("toy:", 0) == 0) return ToyProfile(ParseBigInt(name.substr(4)));
  if (name.rfind("table2:", 0) == 0) {
    return DeriveParams({.b_max = ParseBigInt(name.substr(7))});
  }
  throw ParameterError("unknown profile '" + name +
                       "' (expected toy, toy:<r> or table2:<B_max>)");
}

mpq_class CorrectnessBound(const Params& params, uint64_t size_f) {
  if (size_f == 0) throw ParameterError("size(f) must be at least 1");
  const mpq_class n(static_cast<unsigned long>(params.n));
  const mpq_class p(params.p.value());
  const mpq_class q(params.q.value());
  const mpq_class b_max(params.b_max);
  const mpq_class b_ct(static_cast<unsigned long>(params.b_ct));
  const mpq_class b_sk(params.b_sk);
  const mpq_class p_inp(params.b_add);
  const mpq_class size(static_cast<unsigned long>(size_f));

  mpq_class bound = 1;
  bound -= n * (b_max + 1) / q;
  bound -= 4 * size * n * n * p_inp * b_max * (b_ct * p / q + b_sk * b_sk / p);
  bound -= 4 * size * n * (p / q + 1 / p);
  bound.canonicalize();
  return bound;
}

mpq_class DistributedDecryptionBound(const Params& params,
                                     const mpz_class& x_norm,
                                     const mpz_class& xm_norm) {
  const mpq_class n(static_cast<unsigned long>(params.n));
  const mpq_class p(params.p.value());
  const mpq_class q(params.q.value());
  mpq_class inner = n * params.b_add * mpq_class(x_norm) *
                        mpq_class(static_cast<unsigned long>(params.b_ct)) *
                        p / q +
                    mpq_class(xm_norm) / p + p / q + 1 / p;
  mpq_class bound = 1 - n * inner;
  bound.canonicalize();
  return bound;
}

std::string FormatParamsTable(const std::vector<Params>& rows) {
  std::ostringstream out;
  out << "B_max\tN\tlg_p\tlg_q\th_sk\tsigma\tB_ct\tkappa\tr\tsecurity\n";
  for (const auto& row : rows) {
    char security[32] = "-";
    if (row.security_bits) {
      std::snprintf(security, sizeof(security), "%.1f", *row.security_bits);
    }
    out << FormatBigLog2(row.b_max) << '\t' << row.n << '\t'
        << Log2Floor(row.p.value()) << '\t' << Log2Floor(row.q.value()) << '\t'
        << row.h_sk << '\t' << row.sigma << '\t' << row.b_ct << '\t'
        << row.kappa << '\t' << FormatBigLog2(row.r.value()) << '\t'
        << security << '\n';
  }
  return out.str();
}

}  // namespace vhss
