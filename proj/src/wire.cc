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

#include "vhss/wire.h"

#include <openssl/sha.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "vhss/errors.h"

namespace vhss::wire {

namespace {

constexpr std::array<uint8_t, 7> kMagic = {'2', 'S', 'V', 'H', 'S', 'S', 0};
constexpr size_t kHeaderBytes = kMagic.size() + 2 + 1 + 32;

class Writer {
 public:
  void U8(uint8_t v) { out_.push_back(v); }
  void U16(uint16_t v) { Little(v, 2); }
  void U32(uint32_t v) { Little(v, 4); }
  void U64(uint64_t v) { Little(v, 8); }
  void Raw(std::span<const uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }

  // Minimal-length little-endian magnitude with a u16 length prefix.
  void BigUnsigned(const mpz_class& v) {
    size_t len = v == 0 ? 0 : (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
    U16(static_cast<uint16_t>(len));
    FixedWidth(v, len);
  }

  void FixedWidth(const mpz_class& v, size_t width) {
    size_t start = out_.size();
    out_.resize(start + width, 0);
    size_t count = 0;
    if (v != 0) {
      mpz_export(out_.data() + start, &count, -1, 1, 0, 0, v.get_mpz_t());
    }
  }

  void Ring(const RingElement& e) {
    const size_t width = e.modulus().byte_width();
    for (const auto& c : e.coeffs()) FixedWidth(c, width);
  }

  Bytes Take() { return std::move(out_); }

 private:
  void Little(uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  Bytes out_;
};

class Reader {
 public:
  explicit Reader(std::span<const uint8_t> in) : in_(in) {}

  std::span<const uint8_t> Take(size_t n) {
    if (in_.size() - pos_ < n) throw DecodeError("truncated input");
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  uint8_t U8() { return Take(1)[0]; }
  uint16_t U16() { return static_cast<uint16_t>(Little(2)); }
  uint32_t U32() { return static_cast<uint32_t>(Little(4)); }
  uint64_t U64() { return Little(8); }

  mpz_class BigUnsigned() {
    const size_t len = U16();
    auto b = Take(len);
    if (len > 0 && b[len - 1] == 0) {
      throw DecodeError("non-minimal integer encoding");
    }
    return Import(b);
  }

  RingElement Ring(size_t n, const Modulus& modulus) {
    const size_t width = modulus.byte_width();
    std::vector<mpz_class> coeffs(n);
    for (size_t i = 0; i < n; ++i) {
      coeffs[i] = Import(Take(width));
      if (coeffs[i] >= modulus.value()) {
        throw DecodeError("non-canonical coefficient");
      }
    }
    return RingElement::FromCanonical(n, modulus, std::move(coeffs));
  }

  void ExpectEnd() const {
    if (pos_ != in_.size()) throw DecodeError("trailing bytes");
  }

 private:
  static mpz_class Import(std::span<const uint8_t> b) {
    mpz_class v;
    if (!b.empty()) mpz_import(v.get_mpz_t(), b.size(), -1, 1, 0, 0, b.data());
    return v;
  }
  uint64_t Little(int bytes) {
    auto b = Take(bytes);
    uint64_t v = 0;
    for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  }

  std::span<const uint8_t> in_;
  size_t pos_ = 0;
};

Bytes ParamsPayload(const Params& params) {
  Writer w;
  w.U32(static_cast<uint32_t>(params.n));
  w.BigUnsigned(params.p.value());
  w.BigUnsigned(params.q.value());
  w.BigUnsigned(params.r.value());
  w.U32(params.sigma);
  w.U32(params.h_sk);
  w.U32(params.b_sk);
  w.U64(params.b_err);
  w.U64(params.b_ct);
  w.U32(params.b_add);
  w.BigUnsigned(params.b_max);
  w.U32(params.kappa);
  w.U8(params.security_bits ? 1 : 0);
  w.U32(params.security_bits
            ? static_cast<uint32_t>(std::lround(*params.security_bits * 10))
            : 0);
  return w.Take();
}

Digest Sha256(std::span<const uint8_t> data) {
  Digest d;
  SHA256(data.data(), data.size(), d.data());
  return d;
}

Bytes Envelope(Kind kind, const Digest& digest, const Bytes& payload) {
  Writer w;
  w.Raw(kMagic);
  w.U16(kVersion);
  w.U8(static_cast<uint8_t>(kind));
  w.Raw(digest);
  w.Raw(payload);
  return w.Take();
}

// Validates the header and returns a reader positioned at the payload.
Reader Open(std::span<const uint8_t> bytes, Kind expected,
            const Digest* expected_digest) {
  Kind kind = PeekKind(bytes);
  if (kind != expected) {
    throw DecodeError(std::string("expected a ") + KindName(expected) +
                      " object, found " + KindName(kind));
  }
  if (expected_digest != nullptr &&
      std::memcmp(bytes.data() + kMagic.size() + 3, expected_digest->data(),
                  32) != 0) {
    throw DecodeError("params digest mismatch: object belongs to other params");
  }
  return Reader(bytes.subspan(kHeaderBytes));
}

}  // namespace

const char* KindName(Kind kind) {
  switch (kind) {
    case Kind::kParams: return "params";
    case Kind::kPublicKey: return "public key";
    case Kind::kVerificationKey: return "verification key";
    case Kind::kEvaluationKey: return "evaluation key";
    case Kind::kCiphertext: return "ciphertext";
    case Kind::kPartial: return "partial result";
    case Kind::kProgram: return "program";
  }
  return "unknown";
}

Digest ParamsDigest(const Params& params) {
  return Sha256(ParamsPayload(params));
}

Kind PeekKind(std::span<const uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes) throw DecodeError("truncated header");
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw DecodeError("bad magic");
  }
  const uint16_t version = bytes[7] | (bytes[8] << 8);
  if (version != kVersion) {
    throw DecodeError("unsupported version " + std::to_string(version));
  }
  const uint8_t kind = bytes[9];
  if (kind > static_cast<uint8_t>(Kind::kProgram)) {
    throw DecodeError("unknown object kind " + std::to_string(kind));
  }
  return static_cast<Kind>(kind);
}

Bytes Encode(const Params& params) {
  Bytes payload = ParamsPayload(params);
  return Envelope(Kind::kParams, Sha256(payload), payload);
}

Bytes Encode(const Params& params, const PublicKey& pk) {
  Writer w;
  w.Ring(pk.a);
  w.Ring(pk.b);
  return Envelope(Kind::kPublicKey, ParamsDigest(params), w.Take());
}

Bytes Encode(const Params& params, const VerificationKey& vk) {
  Writer w;
  w.Ring(vk.s_hat);
  w.Ring(vk.s_hat_s);
  return Envelope(Kind::kVerificationKey, ParamsDigest(params), w.Take());
}

Bytes Encode(const Params& params, const EvaluationKey& ek) {
  Writer w;
  w.U8(static_cast<uint8_t>(ek.server));
  w.Raw(ek.k1.bytes);
  w.Raw(ek.k2.bytes);
  w.Ring(ek.sk_share.first);
  w.Ring(ek.sk_share.second);
  w.Ring(ek.vk_share.first);
  w.Ring(ek.vk_share.second);
  return Envelope(Kind::kEvaluationKey, ParamsDigest(params), w.Take());
}

Bytes Encode(const Params& params, const KdmCiphertext& ct) {
  Writer w;
  w.Ring(ct.col1.c0);
  w.Ring(ct.col1.c1);
  w.Ring(ct.col2.c0);
  w.Ring(ct.col2.c1);
  return Envelope(Kind::kCiphertext, ParamsDigest(params), w.Take());
}

Bytes Encode(const Params& params, const PartialResult& y) {
  Writer w;
  w.Ring(y.t);
  w.Ring(y.tau);
  return Envelope(Kind::kPartial, ParamsDigest(params), w.Take());
}

Bytes Encode(const Params& params, const Program& program) {
  const std::string text = FormatProgram(program);
  Writer w;
  w.U32(static_cast<uint32_t>(text.size()));
  w.Raw({reinterpret_cast<const uint8_t*>(text.data()), text.size()});
  return Envelope(Kind::kProgram, ParamsDigest(params), w.Take());
}

Params DecodeParams(std::span<const uint8_t> bytes) {
  Reader r = Open(bytes, Kind::kParams, nullptr);
  const size_t n = r.U32();
  mpz_class p = r.BigUnsigned();
  mpz_class q = r.BigUnsigned();
  mpz_class rr = r.BigUnsigned();
  const uint32_t sigma = r.U32();
  const uint32_t h_sk = r.U32();
  const uint32_t b_sk = r.U32();
  const uint64_t b_err = r.U64();
  const uint64_t b_ct = r.U64();
  const uint32_t b_add = r.U32();
  mpz_class b_max = r.BigUnsigned();
  const uint32_t kappa = r.U32();
  const uint8_t has_security = r.U8();
  const uint32_t tenths = r.U32();
  r.ExpectEnd();
  Params params = [&] {
    try {
      return MakeParams(n, p, q, rr, sigma, h_sk, b_add, b_max, kappa);
    } catch (const ParameterError& e) {
      throw DecodeError(std::string("invalid params: ") + e.what());
    }
  }();
  if (params.b_sk != b_sk || params.b_err != b_err || params.b_ct != b_ct ||
      has_security > 1 || (has_security == 0 && tenths != 0)) {
    throw DecodeError("inconsistent params encoding");
  }
  if (has_security) params.security_bits = tenths / 10.0;
  const Digest digest = ParamsDigest(params);
  if (std::memcmp(bytes.data() + kMagic.size() + 3, digest.data(), 32) != 0) {
    throw DecodeError("params digest mismatch");
  }
  return params;
}

PublicKey DecodePublicKey(const Params& params, std::span<const uint8_t> bytes) {
  const Digest d = ParamsDigest(params);
  Reader r = Open(bytes, Kind::kPublicKey, &d);
  RingElement a = r.Ring(params.n, params.q);
  RingElement b = r.Ring(params.n, params.q);
  r.ExpectEnd();
  return {std::move(a), std::move(b)};
}

VerificationKey DecodeVerificationKey(const Params& params,
                                      std::span<const uint8_t> bytes) {
  const Digest d = ParamsDigest(params);
  Reader r = Open(bytes, Kind::kVerificationKey, &d);
  RingElement s_hat = r.Ring(params.n, params.q);
  RingElement s_hat_s = r.Ring(params.n, params.q);
  r.ExpectEnd();
  return {std::move(s_hat), std::move(s_hat_s)};
}

EvaluationKey DecodeEvaluationKey(const Params& params,
                                  std::span<const uint8_t> bytes) {
  const Digest d = ParamsDigest(params);
  Reader r = Open(bytes, Kind::kEvaluationKey, &d);
  const int server = r.U8();
  if (server != 1 && server != 2) throw DecodeError("bad server index");
  PrfKey k1, k2;
  auto b1 = r.Take(16);
  std::copy(b1.begin(), b1.end(), k1.bytes.begin());
  auto b2 = r.Take(16);
  std::copy(b2.begin(), b2.end(), k2.bytes.begin());
  RingElement s0 = r.Ring(params.n, params.q);
  RingElement s1 = r.Ring(params.n, params.q);
  RingElement v0 = r.Ring(params.n, params.q);
  RingElement v1 = r.Ring(params.n, params.q);
  r.ExpectEnd();
  return {server, k1, k2, {std::move(s0), std::move(s1)},
          {std::move(v0), std::move(v1)}};
}

KdmCiphertext DecodeCiphertext(const Params& params,
                               std::span<const uint8_t> bytes) {
  const Digest d = ParamsDigest(params);
  Reader r = Open(bytes, Kind::kCiphertext, &d);
  RingElement a0 = r.Ring(params.n, params.q);
  RingElement a1 = r.Ring(params.n, params.q);
  RingElement b0 = r.Ring(params.n, params.q);
  RingElement b1 = r.Ring(params.n, params.q);
  r.ExpectEnd();
  return {{std::move(a0), std::move(a1)}, {std::move(b0), std::move(b1)}};
}

PartialResult DecodePartial(const Params& params,
                            std::span<const uint8_t> bytes) {
  const Digest d = ParamsDigest(params);
  Reader r = Open(bytes, Kind::kPartial, &d);
  RingElement t = r.Ring(params.n, params.r);
  RingElement tau = r.Ring(params.n, params.r);
  r.ExpectEnd();
  return {std::move(t), std::move(tau)};
}

Program DecodeProgram(const Params& params, std::span<const uint8_t> bytes) {
  const Digest d = ParamsDigest(params);
  Reader r = Open(bytes, Kind::kProgram, &d);
  const uint32_t len = r.U32();
  auto text = r.Take(len);
  r.ExpectEnd();
  const std::string_view source(reinterpret_cast<const char*>(text.data()),
                               len);
  Program program;
  try {
    program = ParseProgram(source);
  } catch (const ValidationError& e) {
    throw DecodeError(std::string("embedded program: ") + e.what());
  }
  if (FormatProgram(program) != source) {
    throw DecodeError("embedded program text is not canonical");
  }
  return program;
}

Bytes ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DecodeError("cannot open '" + path + "'");
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

void WriteFile(const std::string& path, std::span<const uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DecodeError("cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DecodeError("write failed for '" + path + "'");
}

std::string Hex(std::span<const uint8_t> bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(2 * bytes.size());
  for (uint8_t b : bytes) {
    out += digits[b >> 4];
    out += digits[b & 15];
  }
  return out;
}

}  // namespace vhss::wire
