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

// Restricted-multiplication straight-line programs.
//
// Text form, one instruction per line ('#' starts a comment):
//
//   inputs 2                       optional; otherwise inferred
//   input ct0 bound=2 degree=0     optional magnitude promise per input
//   load r0 ct0
//   addm r2 r0 r1
//   addc ct2 ct0 ct1
//   cmult r3 3,0,-1 ct2            constant coefficients, low degree first
//   mult r4 r3 ct1
//   output r4
//
// Registers (r<k>) hold memory shares, ciphertext slots (ct<k>) hold KDM
// ciphertexts. Every name is assigned once. Instruction ids are 0-based line
// positions among instructions, so both servers derive identical ids.

#ifndef VHSS_PROGRAM_H_
#define VHSS_PROGRAM_H_

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vhss/params.h"

namespace vhss {

struct RegId {
  uint32_t index;
  friend auto operator<=>(const RegId&, const RegId&) = default;
};

struct CtId {
  uint32_t index;
  friend auto operator<=>(const CtId&, const CtId&) = default;
};

namespace op {

struct Load {
  RegId dst;
  CtId src;
  friend bool operator==(const Load&, const Load&) = default;
};
struct AddMem {
  RegId dst;
  RegId lhs;
  RegId rhs;
  friend bool operator==(const AddMem&, const AddMem&) = default;
};
struct AddCt {
  CtId dst;
  CtId lhs;
  CtId rhs;
  friend bool operator==(const AddCt&, const AddCt&) = default;
};
struct CMult {
  RegId dst;
  std::vector<mpz_class> constant;  // signed, low degree first
  CtId src;
  friend bool operator==(const CMult&, const CMult&) = default;
};
struct Mult {
  RegId dst;
  RegId mem;
  CtId src;
  friend bool operator==(const Mult&, const Mult&) = default;
};
struct Output {
  RegId src;
  friend bool operator==(const Output&, const Output&) = default;
};

}  // namespace op

using Instruction =
    std::variant<op::Load, op::AddMem, op::AddCt, op::CMult, op::Mult,
                 op::Output>;

// Coefficients bounded by `bound` in absolute value and zero above `degree`.
struct Magnitude {
  mpz_class bound;
  size_t degree;
  friend bool operator==(const Magnitude&, const Magnitude&) = default;
};

struct Program {
  // 0 means "infer from the instructions".
  size_t n_inputs = 0;
  // Promised magnitude of input ciphertexts, by input index.
  std::vector<std::pair<CtId, Magnitude>> input_bounds;
  std::vector<Instruction> instructions;
  friend bool operator==(const Program&, const Program&) = default;
};

// Throws ValidationError on syntax errors, including the unsupported
// memory-times-memory form "mult r<k> r<i> r<j>".
Program ParseProgram(std::string_view text);
std::string FormatProgram(const Program& program);

struct ValidatedProgram {
  Program program;
  size_t n_inputs;
  // size(f): number of instructions.
  size_t size;
  // Multiplicative degree of the output in the inputs.
  size_t degree;
  // Promised magnitudes of the inputs (defaults filled in).
  std::vector<Magnitude> inputs;
  Magnitude output;
  // Lower bound on the probability that evaluation is correct.
  mpq_class correctness_bound;
};

// Checks single assignment, def-before-use, exactly one output, that some
// ciphertext is loaded, the ciphertext-addition budget (at most B_add input
// ciphertexts summed before any Load/cMult/Mult), and that interval
// propagation keeps every plaintext within B_max:
//   B(a + b) = B(a) + B(b)
//   B(a * b) = min(deg a + 1, deg b + 1, N) B(a) B(b)
// which is the ring bound N B(a) B(b) refined by known degrees. Inputs
// without a promise default to bound floor(r/2) and full degree N - 1.
ValidatedProgram ValidateProgram(const Program& program, const Params& params);

}  // namespace vhss

#endif  // VHSS_PROGRAM_H_
