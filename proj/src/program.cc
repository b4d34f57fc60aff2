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

#include "vhss/program.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "vhss/errors.h"

namespace vhss {

namespace {

// Registers and slots beyond this are almost certainly typos.
constexpr uint32_t kMaxIndex = 1u << 20;

[[noreturn]] void Fail(size_t line, const std::string& message) {
  throw ValidationError("line " + std::to_string(line) + ": " + message);
}

std::vector<std::string> Tokens(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::optional<uint32_t> ParseIndex(const std::string& tok,
                                   std::string_view prefix) {
  if (tok.size() <= prefix.size() || tok.compare(0, prefix.size(), prefix) != 0) {
    return std::nullopt;
  }
  const std::string digits = tok.substr(prefix.size());
  if (!std::all_of(digits.begin(), digits.end(),
                   [](char c) { return c >= '0' && c <= '9'; }) ||
      digits.size() > 7) {
    return std::nullopt;
  }
  uint32_t v = static_cast<uint32_t>(std::stoul(digits));
  if (v >= kMaxIndex) return std::nullopt;
  return v;
}

RegId Reg(const std::string& tok, size_t line) {
  if (auto v = ParseIndex(tok, "r")) return RegId{*v};
  Fail(line, "expected a register r<k>, got '" + tok + "'");
}

CtId Ct(const std::string& tok, size_t line) {
  if (auto v = ParseIndex(tok, "ct")) return CtId{*v};
  Fail(line, "expected a ciphertext slot ct<k>, got '" + tok + "'");
}

std::vector<mpz_class> Constant(const std::string& tok, size_t line) {
  std::vector<mpz_class> out;
  std::stringstream in(tok);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      const bool negative = !part.empty() && part[0] == '-';
      const bool sign = !part.empty() && (part[0] == '-' || part[0] == '+');
      mpz_class v = ParseBigInt(sign ? part.substr(1) : part);
      out.push_back(negative ? mpz_class(-v) : v);
    } catch (const ParameterError&) {
      Fail(line, "bad constant coefficient '" + part + "'");
    }
  }
  if (out.empty()) Fail(line, "empty constant");
  return out;
}

void Arity(const std::vector<std::string>& t, size_t n, size_t line) {
  if (t.size() != n) {
    Fail(line, "'" + t[0] + "' takes " + std::to_string(n - 1) +
                   " operands, got " + std::to_string(t.size() - 1));
  }
}

std::string ConstantText(const std::vector<mpz_class>& c) {
  std::string out;
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += c[i].get_str();
  }
  return out;
}

Magnitude Sum(const Magnitude& a, const Magnitude& b) {
  return {a.bound + b.bound, std::max(a.degree, b.degree)};
}

Magnitude Product(const Magnitude& a, const Magnitude& b, size_t n) {
  // Each output coefficient collects at most one term per support position
  // of either factor, with or without negacyclic wrap.
  const size_t terms = std::min({a.degree + 1, b.degree + 1, n});
  const size_t degree = a.degree + b.degree < n ? a.degree + b.degree : n - 1;
  return {mpz_class(static_cast<unsigned long>(terms)) * a.bound * b.bound,
          degree};
}

Magnitude ConstantMagnitude(const std::vector<mpz_class>& c) {
  Magnitude m{0, 0};
  for (size_t i = 0; i < c.size(); ++i) {
    mpz_class v = abs(c[i]);
    if (v > m.bound) m.bound = v;
    if (c[i] != 0) m.degree = i;
  }
  return m;
}

}  // namespace

Program ParseProgram(std::string_view text) {
  Program program;
  std::istringstream in{std::string(text)};
  std::string raw;
  size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    auto t = Tokens(raw);
    if (t.empty()) continue;
    const std::string& kw = t[0];
    if (kw == "inputs") {
      Arity(t, 2, line);
      try {
        program.n_inputs = std::stoul(t[1]);
      } catch (const std::exception&) {
        Fail(line, "bad input count '" + t[1] + "'");
      }
    } else if (kw == "input") {
      if (t.size() < 2) Fail(line, "'input' needs a ciphertext slot");
      Magnitude m{-1, 0};
      bool has_degree = false;
      for (size_t i = 2; i < t.size(); ++i) {
        auto eq = t[i].find('=');
        if (eq == std::string::npos) Fail(line, "expected key=value");
        const std::string key = t[i].substr(0, eq);
        const std::string value = t[i].substr(eq + 1);
        try {
          if (key == "bound") {
            m.bound = ParseBigInt(value);
          } else if (key == "degree") {
            m.degree = std::stoul(value);
            has_degree = true;
          } else {
            Fail(line, "unknown input attribute '" + key + "'");
          }
        } catch (const ValidationError&) {
          throw;
        } catch (const std::exception&) {
          Fail(line, "bad value for '" + key + "'");
        }
      }
      if (m.bound < 0) Fail(line, "'input' requires bound=<B>");
      if (!has_degree) m.degree = SIZE_MAX;
      program.input_bounds.emplace_back(Ct(t[1], line), m);
    } else if (kw == "load") {
      Arity(t, 3, line);
      program.instructions.push_back(op::Load{Reg(t[1], line), Ct(t[2], line)});
    } else if (kw == "addm") {
      Arity(t, 4, line);
      program.instructions.push_back(
          op::AddMem{Reg(t[1], line), Reg(t[2], line), Reg(t[3], line)});
    } else if (kw == "addc") {
      Arity(t, 4, line);
      program.instructions.push_back(
          op::AddCt{Ct(t[1], line), Ct(t[2], line), Ct(t[3], line)});
    } else if (kw == "cmult") {
      Arity(t, 4, line);
      program.instructions.push_back(
          op::CMult{Reg(t[1], line), Constant(t[2], line), Ct(t[3], line)});
    } else if (kw == "mult") {
      Arity(t, 4, line);
      if (ParseIndex(t[3], "r")) {
        Fail(line,
             "memory x memory multiplication is not supported; mult takes a "
             "register and a ciphertext");
      }
      program.instructions.push_back(
          op::Mult{Reg(t[1], line), Reg(t[2], line), Ct(t[3], line)});
    } else if (kw == "output") {
      Arity(t, 2, line);
      program.instructions.push_back(op::Output{Reg(t[1], line)});
    } else {
      Fail(line, "unknown instruction '" + kw + "'");
    }
  }
  return program;
}

std::string FormatProgram(const Program& program) {
  std::ostringstream out;
  if (program.n_inputs > 0) out << "inputs " << program.n_inputs << '\n';
  for (const auto& [ct, m] : program.input_bounds) {
    out << "input ct" << ct.index << " bound=" << m.bound.get_str();
    if (m.degree != SIZE_MAX) out << " degree=" << m.degree;
    out << '\n';
  }
  for (const auto& ins : program.instructions) {
    std::visit(
        [&](const auto& i) {
          using T = std::decay_t<decltype(i)>;
          if constexpr (std::is_same_v<T, op::Load>) {
            out << "load r" << i.dst.index << " ct" << i.src.index;
          } else if constexpr (std::is_same_v<T, op::AddMem>) {
            out << "addm r" << i.dst.index << " r" << i.lhs.index << " r"
                << i.rhs.index;
          } else if constexpr (std::is_same_v<T, op::AddCt>) {
            out << "addc ct" << i.dst.index << " ct" << i.lhs.index << " ct"
                << i.rhs.index;
          } else if constexpr (std::is_same_v<T, op::CMult>) {
            out << "cmult r" << i.dst.index << ' ' << ConstantText(i.constant)
                << " ct" << i.src.index;
          } else if constexpr (std::is_same_v<T, op::Mult>) {
            out << "mult r" << i.dst.index << " r" << i.mem.index << " ct"
                << i.src.index;
          } else {
            out << "output r" << i.src.index;
          }
        },
        ins);
    out << '\n';
  }
  return out.str();
}

ValidatedProgram ValidateProgram(const Program& program, const Params& params) {
  const size_t n = params.n;
  const Magnitude default_input{params.r.half(), n - 1};

  struct CtInfo {
    Magnitude magnitude;
    uint32_t summands;
    bool is_input;
  };
  struct RegInfo {
    Magnitude magnitude;
    size_t degree;
  };
  std::map<uint32_t, CtInfo> cts;
  std::map<uint32_t, RegInfo> regs;
  std::map<uint32_t, Magnitude> promised;
  for (const auto& [ct, m] : program.input_bounds) {
    if (!promised.emplace(ct.index, m).second) {
      throw ValidationError("input ct" + std::to_string(ct.index) +
                            " has two magnitude promises");
    }
  }

  auto fail = [](size_t id, const std::string& rule, const std::string& what) {
    throw ValidationError("instruction " + std::to_string(id) + ": " + rule +
                          ": " + what);
  };
  auto within_bmax = [&](size_t id, const Magnitude& m, const std::string& name) {
    if (m.bound > params.b_max) {
      fail(id, "magnitude bound exceeded",
           name + " may reach " + m.bound.get_str() + " > B_max = " +
               params.b_max.get_str());
    }
  };
  auto input_magnitude = [&](uint32_t index) {
    auto it = promised.find(index);
    if (it == promised.end()) return default_input;
    Magnitude m = it->second;
    m.degree = std::min(m.degree, n - 1);
    return m;
  };
  auto use_ct = [&](size_t id, CtId ct) -> const CtInfo& {
    auto it = cts.find(ct.index);
    if (it != cts.end()) return it->second;
    if (program.n_inputs > 0 && ct.index >= program.n_inputs) {
      fail(id, "use before definition",
           "ct" + std::to_string(ct.index) + " is neither an input nor defined");
    }
    return cts.emplace(ct.index, CtInfo{input_magnitude(ct.index), 1, true})
        .first->second;
  };
  auto consume_ct = [&](size_t id, CtId ct) -> const CtInfo& {
    const CtInfo& info = use_ct(id, ct);
    if (info.summands > params.b_add) {
      fail(id, "ciphertext addition budget exceeded",
           "ct" + std::to_string(ct.index) + " sums " +
               std::to_string(info.summands) + " input ciphertexts > B_add = " +
               std::to_string(params.b_add));
    }
    within_bmax(id, info.magnitude, "ct" + std::to_string(ct.index));
    return info;
  };
  auto use_reg = [&](size_t id, RegId r) -> const RegInfo& {
    auto it = regs.find(r.index);
    if (it == regs.end()) {
      fail(id, "use before definition",
           "r" + std::to_string(r.index) + " is not defined");
    }
    return it->second;
  };
  auto define_reg = [&](size_t id, RegId r, RegInfo info) {
    within_bmax(id, info.magnitude, "r" + std::to_string(r.index));
    if (!regs.emplace(r.index, std::move(info)).second) {
      fail(id, "single assignment",
           "r" + std::to_string(r.index) + " is assigned twice");
    }
  };

  std::optional<RegId> output;
  bool loads_input = false;
  for (size_t id = 0; id < program.instructions.size(); ++id) {
    const Instruction& ins = program.instructions[id];
    if (output) fail(id, "single output", "instructions after output");
    if (const auto* i = std::get_if<op::Load>(&ins)) {
      const CtInfo& c = consume_ct(id, i->src);
      loads_input = true;
      define_reg(id, i->dst, {c.magnitude, 1});
    } else if (const auto* i = std::get_if<op::AddMem>(&ins)) {
      const RegInfo& a = use_reg(id, i->lhs);
      const RegInfo& b = use_reg(id, i->rhs);
      define_reg(id, i->dst,
                 {Sum(a.magnitude, b.magnitude), std::max(a.degree, b.degree)});
    } else if (const auto* i = std::get_if<op::AddCt>(&ins)) {
      const CtInfo a = use_ct(id, i->lhs);
      const CtInfo b = use_ct(id, i->rhs);
      if (cts.count(i->dst.index) ||
          (program.n_inputs > 0 && i->dst.index < program.n_inputs)) {
        fail(id, "single assignment",
             "ct" + std::to_string(i->dst.index) + " is already defined");
      }
      cts.emplace(i->dst.index, CtInfo{Sum(a.magnitude, b.magnitude),
                                       a.summands + b.summands, false});
    } else if (const auto* i = std::get_if<op::CMult>(&ins)) {
      if (i->constant.size() > n) {
        fail(id, "constant too long", "more than N coefficients");
      }
      const CtInfo& c = consume_ct(id, i->src);
      loads_input = true;
      define_reg(id, i->dst,
                 {Product(ConstantMagnitude(i->constant), c.magnitude, n), 1});
    } else if (const auto* i = std::get_if<op::Mult>(&ins)) {
      const RegInfo& m = use_reg(id, i->mem);
      const CtInfo& c = consume_ct(id, i->src);
      define_reg(id, i->dst,
                 {Product(m.magnitude, c.magnitude, n), m.degree + 1});
    } else if (const auto* i = std::get_if<op::Output>(&ins)) {
      use_reg(id, i->src);
      output = i->src;
    }
  }
  if (!loads_input) {
    throw ValidationError(
        "program loads no ciphertext (constant programs are not supported)");
  }
  if (!output) throw ValidationError("program has no output instruction");

  size_t n_inputs = program.n_inputs;
  std::vector<Magnitude> inputs;
  if (n_inputs == 0) {
    for (const auto& [index, info] : cts) {
      if (info.is_input) n_inputs = std::max<size_t>(n_inputs, index + 1);
    }
  }
  for (const auto& [index, m] : promised) {
    if (index >= n_inputs) {
      throw ValidationError("magnitude promise for unknown input ct" +
                            std::to_string(index));
    }
  }
  for (uint32_t i = 0; i < n_inputs; ++i) inputs.push_back(input_magnitude(i));

  const RegInfo& out = regs.at(output->index);
  ValidatedProgram v{
      .program = program,
      .n_inputs = n_inputs,
      .size = program.instructions.size(),
      .degree = out.degree,
      .inputs = std::move(inputs),
      .output = out.magnitude,
      .correctness_bound = CorrectnessBound(params, program.instructions.size()),
  };
  v.program.n_inputs = n_inputs;
  return v;
}

}  // namespace vhss
