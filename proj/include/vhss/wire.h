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

// Byte-exact encodings of every protocol object (files use ".vhss").
//
// Envelope:
//   magic "2SVHSS\0" (7) | version u16 LE = 1 | kind u8 |
//   params digest (32, SHA-256 of the canonical params payload) | payload
//
// Ring elements are N fixed-width little-endian coefficients, width
// ceil(bits(modulus) / 8): q for keys and ciphertexts, r for partial results.
// Composite objects concatenate their fields in declaration order.

#ifndef VHSS_WIRE_H_
#define VHSS_WIRE_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vhss/params.h"
#include "vhss/pke.h"
#include "vhss/program.h"
#include "vhss/vhss.h"

namespace vhss::wire {

using Bytes = std::vector<uint8_t>;
using Digest = std::array<uint8_t, 32>;

inline constexpr uint16_t kVersion = 1;

enum class Kind : uint8_t {
  kParams = 0,
  kPublicKey = 1,
  kVerificationKey = 2,
  kEvaluationKey = 3,
  kCiphertext = 4,
  kPartial = 5,
  kProgram = 6,
};

const char* KindName(Kind kind);

Digest ParamsDigest(const Params& params);

// Reads the envelope header only. Throws DecodeError on bad magic, version,
// unknown kind or short input.
Kind PeekKind(std::span<const uint8_t> bytes);

Bytes Encode(const Params& params);
Bytes Encode(const Params& params, const PublicKey& pk);
Bytes Encode(const Params& params, const VerificationKey& vk);
Bytes Encode(const Params& params, const EvaluationKey& ek);
Bytes Encode(const Params& params, const KdmCiphertext& ct);
Bytes Encode(const Params& params, const PartialResult& y);
Bytes Encode(const Params& params, const Program& program);

// Every decoder throws DecodeError on envelope mismatch (including a params
// digest that does not match `params`), truncation, trailing bytes, or a
// non-canonical coefficient.
Params DecodeParams(std::span<const uint8_t> bytes);
PublicKey DecodePublicKey(const Params& params, std::span<const uint8_t> bytes);
VerificationKey DecodeVerificationKey(const Params& params,
                                      std::span<const uint8_t> bytes);
EvaluationKey DecodeEvaluationKey(const Params& params,
                                  std::span<const uint8_t> bytes);
KdmCiphertext DecodeCiphertext(const Params& params,
                               std::span<const uint8_t> bytes);
PartialResult DecodePartial(const Params& params,
                            std::span<const uint8_t> bytes);
Program DecodeProgram(const Params& params, std::span<const uint8_t> bytes);

// File helpers; throw DecodeError on I/O failure.
Bytes ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::span<const uint8_t> bytes);

std::string Hex(std::span<const uint8_t> bytes);

}  // namespace vhss::wire

#endif  // VHSS_WIRE_H_
