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

// Python bindings. Protocol objects cross the boundary as wire-format bytes,
// so anything produced here interoperates with the command-line tool.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "vhss/errors.h"
#include "vhss/harness.h"
#include "vhss/params.h"
#include "vhss/program.h"
#include "vhss/sampling.h"
#include "vhss/vhss.h"
#include "vhss/wire.h"

namespace py = pybind11;

namespace vhss {
namespace {

wire::Bytes ToBytes(const py::bytes& b) {
  std::string s = b;
  return wire::Bytes(s.begin(), s.end());
}

py::bytes FromBytes(const wire::Bytes& b) {
  return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
}

py::int_ ToPy(const mpz_class& v) {
  return py::int_(py::module_::import("builtins").attr("int")(v.get_str()));
}

mpz_class FromPy(const py::int_& v) {
  return mpz_class(py::str(static_cast<py::handle>(v)).cast<std::string>());
}

Seed ToSeed(const py::bytes& b) {
  std::string s = b;
  if (s.size() != 32) throw ParameterError("seed must be 32 bytes");
  Seed seed;
  std::copy(s.begin(), s.end(), seed.begin());
  return seed;
}

RngHandle MakeRng(const std::optional<py::bytes>& seed) {
  return seed ? RngHandle(ToSeed(*seed)) : RngHandle::FromOsEntropy();
}

Params Load(const py::bytes& params) {
  return wire::DecodeParams(ToBytes(params));
}

std::vector<py::int_> Coefficients(const RingElement& e) {
  std::vector<py::int_> out;
  for (const auto& c : e.coeffs()) out.push_back(ToPy(c));
  return out;
}

py::dict Describe(const Params& p) {
  py::dict d;
  d["n"] = p.n;
  d["p"] = ToPy(p.p.value());
  d["q"] = ToPy(p.q.value());
  d["r"] = ToPy(p.r.value());
  d["lg_p"] = Log2Floor(p.p.value());
  d["lg_q"] = Log2Floor(p.q.value());
  d["sigma"] = p.sigma;
  d["h_sk"] = p.h_sk;
  d["b_err"] = p.b_err;
  d["b_ct"] = p.b_ct;
  d["b_add"] = p.b_add;
  d["b_max"] = ToPy(p.b_max);
  d["kappa"] = p.kappa;
  d["security_bits"] = p.security_bits;
  return d;
}

py::dict ReportDict(const GameReport& r) {
  py::dict d;
  d["game"] = r.game;
  d["trials"] = r.trials;
  d["events"] = r.events;
  d["bound"] = r.bound;
  d["passed"] = r.pass;
  py::dict details;
  for (const auto& [k, v] : r.details) details[py::str(k)] = v;
  d["details"] = details;
  return d;
}

}  // namespace
}  // namespace vhss

PYBIND11_MODULE(_core, m) {
  using namespace vhss;
  m.doc() = "Two-server verifiable homomorphic secret sharing";

  py::register_exception<DecodeError>(m, "DecodeError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError",
                                          PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);

  m.def(
      "profile",
      [](const std::string& name) { return FromBytes(wire::Encode(ProfileByName(name))); },
      py::arg("name"), "Encoded params for 'toy', 'toy:<r>' or 'table2:<B_max>'.");

  m.def(
      "derive_params",
      [](const std::string& b_max, uint32_t kappa, uint32_t sigma,
         uint32_t b_add, std::optional<size_t> n,
         std::optional<std::string> r) {
        ParamRequest req;
        req.b_max = ParseBigInt(b_max);
        req.kappa = kappa;
        req.sigma = sigma;
        req.b_add = b_add;
        req.n = n;
        if (r) req.r = ParseBigInt(*r);
        return FromBytes(wire::Encode(DeriveParams(req)));
      },
      py::arg("b_max"), py::kw_only(), py::arg("kappa") = 40,
      py::arg("sigma") = 8, py::arg("b_add") = 1, py::arg("n") = py::none(),
      py::arg("r") = py::none());

  m.def("describe", [](const py::bytes& params) { return Describe(Load(params)); },
        py::arg("params"));

  m.def("params_table", [] { return FormatParamsTable(Table2Profiles()); });

  m.def(
      "keygen",
      [](const py::bytes& params, std::optional<py::bytes> seed) {
        const Params p = Load(params);
        RngHandle rng = MakeRng(seed);
        KeyBundle k = KeyGen(p, rng);
        py::dict d;
        d["pk"] = FromBytes(wire::Encode(p, k.pk));
        d["vk"] = FromBytes(wire::Encode(p, k.vk));
        d["ek1"] = FromBytes(wire::Encode(p, k.ek1));
        d["ek2"] = FromBytes(wire::Encode(p, k.ek2));
        return d;
      },
      py::arg("params"), py::arg("seed") = py::none());

  m.def(
      "encrypt",
      [](const py::bytes& params, const py::bytes& pk, py::object value,
         std::optional<py::bytes> seed) {
        const Params p = Load(params);
        const PublicKey key = wire::DecodePublicKey(p, ToBytes(pk));
        RngHandle rng = MakeRng(seed);
        std::vector<mpz_class> coeffs;
        if (py::isinstance<py::int_>(value)) {
          coeffs.push_back(FromPy(value.cast<py::int_>()));
        } else {
          for (auto item : value) coeffs.push_back(FromPy(item.cast<py::int_>()));
        }
        RingElement x = RingElement::FromIntegers(p.n, p.r, coeffs);
        return FromBytes(wire::Encode(p, Encrypt(p, key, x, rng)));
      },
      py::arg("params"), py::arg("pk"), py::arg("value"),
      py::arg("seed") = py::none(),
      "Encrypt an integer or a coefficient list (reduced mod r).");

  m.def(
      "evaluate",
      [](const py::bytes& params, const py::bytes& ek, const std::string& program,
         const std::vector<py::bytes>& cts) {
        const Params p = Load(params);
        const EvaluationKey key = wire::DecodeEvaluationKey(p, ToBytes(ek));
        const ValidatedProgram prog = ValidateProgram(ParseProgram(program), p);
        std::vector<KdmCiphertext> in;
        for (const auto& c : cts) in.push_back(wire::DecodeCiphertext(p, ToBytes(c)));
        wire::Bytes out;
        {
          py::gil_scoped_release release;
          out = wire::Encode(p, Evaluate(p, key, in, prog));
        }
        return FromBytes(out);
      },
      py::arg("params"), py::arg("ek"), py::arg("program"), py::arg("cts"));

  m.def(
      "verify",
      [](const py::bytes& params, const py::bytes& vk, const py::bytes& y1,
         const py::bytes& y2) -> std::optional<std::vector<py::int_>> {
        const Params p = Load(params);
        auto out = Verify(p, wire::DecodeVerificationKey(p, ToBytes(vk)),
                          wire::DecodePartial(p, ToBytes(y1)),
                          wire::DecodePartial(p, ToBytes(y2)));
        if (!out) return std::nullopt;
        return Coefficients(*out);
      },
      py::arg("params"), py::arg("vk"), py::arg("y1"), py::arg("y2"),
      "Output coefficients mod r, or None if the tag check fails.");

  m.def(
      "run_game",
      [](const std::string& game, const std::string& profile, uint64_t trials,
         const std::string& strategy, std::optional<py::bytes> seed) {
        const Params p = ProfileByName(profile);
        RngHandle rng = MakeRng(seed);
        py::gil_scoped_release release;
        if (game == "correctness") return RunCorrectnessGame(p, trials, rng);
        if (game == "verifiability") {
          return RunVerifiabilityGame(p, trials, ParseTamper(strategy), rng);
        }
        if (game == "hiding") return RunHidingGame(p, trials, rng);
        throw ParameterError("unknown game '" + game + "'");
      },
      py::arg("game"), py::arg("profile") = "toy", py::arg("trials") = 100,
      py::arg("strategy") = "uniform", py::arg("seed") = py::none());

  py::class_<GameReport>(m, "GameReport")
      .def_property_readonly("game", [](const GameReport& r) { return r.game; })
      .def_property_readonly("trials", [](const GameReport& r) { return r.trials; })
      .def_property_readonly("events", [](const GameReport& r) { return r.events; })
      .def_property_readonly("bound", [](const GameReport& r) { return r.bound; })
      .def_property_readonly("passed", [](const GameReport& r) { return r.pass; })
      .def("as_dict", &ReportDict)
      .def("__str__", &GameReport::Format);
}
