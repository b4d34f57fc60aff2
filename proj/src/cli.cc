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

#include "vhss/cli.h"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "vhss/errors.h"
#include "vhss/harness.h"
#include "vhss/params.h"
#include "vhss/program.h"
#include "vhss/sampling.h"
#include "vhss/vhss.h"
#include "vhss/wire.h"

namespace vhss {

namespace {

constexpr int kOk = 0;
constexpr int kReject = 1;
constexpr int kInvalid = 2;
constexpr int kIoError = 3;

Seed ParseSeed(const std::string& hex) {
  if (hex.size() != 64 ||
      hex.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos) {
    throw ParameterError("seed must be 64 hex digits (32 bytes)");
  }
  Seed seed;
  for (size_t i = 0; i < seed.size(); ++i) {
    seed[i] = static_cast<uint8_t>(std::stoul(hex.substr(2 * i, 2), nullptr, 16));
  }
  return seed;
}

// Root seed from --seed, else $VHSS_SEED, else the OS.
class Seeds {
 public:
  void Resolve(const std::string& flag) {
    if (!flag.empty()) {
      root_ = ParseSeed(flag);
    } else if (const char* env = std::getenv("VHSS_SEED"); env && *env) {
      root_ = ParseSeed(env);
    } else {
      RngHandle os = RngHandle::FromOsEntropy();
      root_ = os.Fork();
    }
  }
  RngHandle For(const std::string& label) const {
    return RngHandle(DeriveSeed(root_, label));
  }

 private:
  Seed root_{};
};

Params LoadParams(const std::string& path) {
  return wire::DecodeParams(wire::ReadFile(path));
}

Program LoadProgram(const Params& params, const std::string& path) {
  const wire::Bytes bytes = wire::ReadFile(path);
  static constexpr char kMagic[] = "2SVHSS";
  if (bytes.size() >= 7 && std::equal(kMagic, kMagic + 7, bytes.begin())) {
    return wire::DecodeProgram(params, bytes);
  }
  return ParseProgram(std::string(bytes.begin(), bytes.end()));
}

std::string FormatValue(const RingElement& y) {
  if (y.IsConstant()) return y[0].get_str();
  size_t top = y.degree_bound();
  while (top > 1 && y[top - 1] == 0) --top;
  std::string out;
  for (size_t i = 0; i < top; ++i) {
    if (i) out += ',';
    out += y[i].get_str();
  }
  return out;
}

std::vector<mpz_class> ParseCoefficients(const std::string& csv) {
  std::vector<mpz_class> out;
  std::stringstream in(csv);
  std::string part;
  while (std::getline(in, part, ',')) {
    const bool negative = !part.empty() && part[0] == '-';
    mpz_class v = ParseBigInt(negative ? part.substr(1) : part);
    out.push_back(negative ? mpz_class(-v) : v);
  }
  if (out.empty()) throw ParameterError("empty coefficient list");
  return out;
}

// Holds every option value; the subcommand callbacks read from here.
struct Options {
  std::string seed;
  // params derive
  std::string profile;
  std::string b_max;
  size_t n = 0;
  uint32_t kappa = 40;
  uint32_t sigma = 8;
  uint32_t b_add = 1;
  std::string r;
  bool all = false;
  // object files
  std::string params;
  std::string out;
  std::string out_dir = ".";
  std::string pk, vk, ek, program;
  std::vector<std::string> cts;
  std::string y1, y2;
  std::string value, coeffs;
  int server = 0;
  // games and benchmarks
  std::string game;
  uint64_t trials = 0;
  std::string strategy = "all";
  size_t max_size = 0;
  int reps = 5;
  std::vector<size_t> sweep;
};

int ParamsDerive(const Options& o) {
  std::vector<Params> rows;
  if (o.all) {
    rows = Table2Profiles();
  } else if (!o.profile.empty()) {
    rows.push_back(ProfileByName(o.profile));
  } else if (!o.b_max.empty()) {
    ParamRequest req{.b_max = ParseBigInt(o.b_max),
                     .kappa = o.kappa,
                     .sigma = o.sigma,
                     .b_add = o.b_add};
    if (o.n) req.n = o.n;
    if (!o.r.empty()) req.r = ParseBigInt(o.r);
    rows.push_back(DeriveParams(req));
  } else {
    throw ParameterError("params derive needs --all, --profile or --bmax");
  }
  std::cout << FormatParamsTable(rows);
  if (!o.out.empty()) {
    if (rows.size() != 1) throw ParameterError("--out needs a single row");
    wire::WriteFile(o.out, wire::Encode(rows[0]));
  }
  return kOk;
}

int ParamsShow(const Options& o) {
  const Params params = LoadParams(o.params);
  std::cout << FormatParamsTable({params})
            << "digest=" << wire::Hex(wire::ParamsDigest(params)) << '\n';
  return kOk;
}

int Keygen(const Options& o, const Seeds& seeds) {
  const Params params = LoadParams(o.params);
  RngHandle rng = seeds.For("keygen");
  const KeyBundle keys = KeyGen(params, rng);
  const std::filesystem::path dir(o.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  wire::WriteFile((dir / "pk.vhss").string(), wire::Encode(params, keys.pk));
  wire::WriteFile((dir / "vk.vhss").string(), wire::Encode(params, keys.vk));
  wire::WriteFile((dir / "ek1.vhss").string(), wire::Encode(params, keys.ek1));
  wire::WriteFile((dir / "ek2.vhss").string(), wire::Encode(params, keys.ek2));
  std::cout << "wrote pk.vhss vk.vhss ek1.vhss ek2.vhss to " << dir.string()
            << '\n';
  return kOk;
}

int EncryptCmd(const Options& o, const Seeds& seeds) {
  const Params params = LoadParams(o.params);
  const PublicKey pk = wire::DecodePublicKey(params, wire::ReadFile(o.pk));
  if (o.value.empty() == o.coeffs.empty()) {
    throw ParameterError("encrypt needs exactly one of --value or --coeffs");
  }
  const std::string text = o.value.empty() ? o.coeffs : o.value;
  const auto coeffs = ParseCoefficients(text);
  if (coeffs.size() > params.n) throw ParameterError("too many coefficients");
  if (!o.value.empty() && coeffs.size() != 1) {
    throw ParameterError("--value takes a single integer");
  }
  const RingElement x = RingElement::FromIntegers(params.n, params.r, coeffs);
  RngHandle rng = seeds.For("encrypt|" + text + "|" +
                            std::filesystem::path(o.out).filename().string());
  wire::WriteFile(o.out, wire::Encode(params, Encrypt(params, pk, x, rng)));
  return kOk;
}

int EvalCmd(const Options& o) {
  const Params params = LoadParams(o.params);
  const EvaluationKey ek =
      wire::DecodeEvaluationKey(params, wire::ReadFile(o.ek));
  if (ek.server != o.server) {
    throw ValidationError("--server " + std::to_string(o.server) +
                          " does not match the evaluation key (server " +
                          std::to_string(ek.server) + ")");
  }
  const ValidatedProgram prog =
      ValidateProgram(LoadProgram(params, o.program), params);
  std::vector<KdmCiphertext> cts;
  for (const auto& path : o.cts) {
    cts.push_back(wire::DecodeCiphertext(params, wire::ReadFile(path)));
  }
  const PartialResult y = Evaluate(params, ek, cts, prog);
  wire::WriteFile(o.out, wire::Encode(params, y));
  return kOk;
}

int VerifyCmd(const Options& o) {
  const Params params = LoadParams(o.params);
  const VerificationKey vk =
      wire::DecodeVerificationKey(params, wire::ReadFile(o.vk));
  const PartialResult y1 = wire::DecodePartial(params, wire::ReadFile(o.y1));
  const PartialResult y2 = wire::DecodePartial(params, wire::ReadFile(o.y2));
  const auto y = Verify(params, vk, y1, y2);
  if (!y) {
    std::cout << "REJECT\n";
    return kReject;
  }
  std::cout << FormatValue(*y) << '\n';
  return kOk;
}

int GameCmd(const Options& o, const Seeds& seeds) {
  const Params params = ProfileByName(o.profile.empty() ? "toy" : o.profile);
  RngHandle rng = seeds.For("game|" + o.game);
  GeneratorOptions gen;
  if (o.max_size) gen.max_size = o.max_size;
  bool pass = true;
  if (o.game == "correctness") {
    GameReport r = RunCorrectnessGame(params, o.trials ? o.trials : 1000, rng, gen);
    std::cout << r.Format();
    pass = r.pass;
  } else if (o.game == "verifiability") {
    std::vector<Tamper> tampers;
    if (o.strategy == "all") {
      tampers = AdversarialTampers();
      tampers.push_back(Tamper::kWhiteBox);
    } else {
      tampers.push_back(ParseTamper(o.strategy));
    }
    const uint64_t trials = o.trials ? o.trials : 2500;
    for (size_t i = 0; i < tampers.size(); ++i) {
      GameReport r = RunVerifiabilityGame(params, trials, tampers[i], rng, gen);
      std::cout << (i ? "\n" : "") << r.Format();
      pass = pass && r.pass;
    }
  } else if (o.game == "hiding") {
    GameReport r = RunHidingGame(params, o.trials ? o.trials : 10000, rng);
    std::cout << r.Format();
    pass = r.pass;
  } else {
    throw ParameterError("unknown game '" + o.game + "'");
  }
  return pass ? kOk : kReject;
}

int BenchCmd(const Options& o, const Seeds& seeds) {
  const Params params =
      ProfileByName(o.profile.empty() ? "table2:2^32" : o.profile);
  RngHandle rng = seeds.For("bench");
  std::cout << "subroutine\tmedian_ms\n";
  for (const Timing& t : BenchSubroutines(params, o.reps, rng)) {
    std::cout << t.name << '\t' << t.median_ms << '\n';
  }
  if (!o.sweep.empty()) {
    std::vector<double> x, y;
    std::cout << "degree\tbest_ms\n";
    for (const SweepPoint& p : DegreeSweep(params, o.sweep, o.reps, rng)) {
      std::cout << p.degree << '\t' << p.best_ms << '\n';
      x.push_back(static_cast<double>(p.degree));
      y.push_back(p.best_ms);
    }
    if (x.size() >= 2) std::cout << "r2=" << LinearFitR2(x, y) << '\n';
  }
  return kOk;
}

int Selftest(const Seeds& seeds) {
  bool ok = true;
  auto check = [&](const std::string& name, bool pass) {
    std::cout << (pass ? "PASS " : "FAIL ") << name << '\n';
    ok = ok && pass;
  };
  const size_t lg_q[] = {153, 183, 220, 284, 417, 673};
  const auto rows = Table2Profiles();
  bool table = rows.size() == 6;
  for (size_t i = 0; table && i < rows.size(); ++i) {
    table = Log2Floor(rows[i].q.value()) == lg_q[i];
  }
  check("parameter table", table);

  const Params params = ToyProfile(mpz_class(7));
  RngHandle rng = seeds.For("selftest");
  const KeyBundle keys = KeyGen(params, rng);
  const ValidatedProgram prog = ValidateProgram(
      ParseProgram("load r0 ct0\nmult r1 r0 ct1\noutput r1\n"), params);
  const std::vector<KdmCiphertext> cts{EncryptScalar(params, keys.pk, 2, rng),
                                       EncryptScalar(params, keys.pk, 3, rng)};
  PartialResult y1 = Evaluate(params, keys.ek1, cts, prog);
  const PartialResult y2 = Evaluate(params, keys.ek2, cts, prog);
  const auto y = Verify(params, keys.vk, y1, y2);
  check("2 * 3 mod 7 = 6", y && *y == RingElement::Constant(params.n, params.r, 6));
  y1.t = y1.t + RingElement::One(params.n, params.r);
  check("tampered partial rejected", !Verify(params, keys.vk, y1, y2));
  const wire::Bytes bytes = wire::Encode(params, keys.ek2);
  check("wire round trip",
        wire::DecodeEvaluationKey(params, bytes) == keys.ek2);
  return ok ? kOk : kReject;
}

}  // namespace

int CliMain(int argc, char** argv) {
  CLI::App app{"Two-server verifiable homomorphic secret sharing"};
  app.require_subcommand(1);
  Options o;
  Seeds seeds;
  app.add_option("--seed", o.seed,
                 "32-byte hex seed (default: $VHSS_SEED, else OS entropy)");

  auto* params = app.add_subcommand("params", "Parameter sets");
  params->require_subcommand(1);
  auto* derive = params->add_subcommand("derive", "Derive and print parameters");
  derive->add_option("--profile", o.profile, "toy, toy:<r> or table2:<B_max>");
  derive->add_option("--bmax", o.b_max, "plaintext bound B_max (e.g. 2^32)");
  derive->add_option("--n", o.n, "ring degree N (power of two)");
  derive->add_option("--kappa", o.kappa, "statistical parameter");
  derive->add_option("--sigma", o.sigma, "error width");
  derive->add_option("--badd", o.b_add, "ciphertext addition budget");
  derive->add_option("--r", o.r, "output modulus (default B_max)");
  derive->add_flag("--all", o.all, "all six tabulated rows");
  derive->add_option("--out", o.out, "write the parameter file");
  auto* show = params->add_subcommand("show", "Print a parameter file");
  show->add_option("--params", o.params)->required();

  auto* keygen = app.add_subcommand("keygen", "Generate pk, vk, ek1, ek2");
  keygen->add_option("--params", o.params)->required();
  keygen->add_option("--out-dir", o.out_dir);

  auto* encrypt = app.add_subcommand("encrypt", "Encrypt one input");
  encrypt->add_option("--params", o.params)->required();
  encrypt->add_option("--pk", o.pk)->required();
  encrypt->add_option("--value", o.value, "integer input");
  encrypt->add_option("--coeffs", o.coeffs, "comma-separated coefficients");
  encrypt->add_option("--out", o.out)->required();

  auto* eval = app.add_subcommand("eval", "Evaluate a program on one server");
  eval->add_option("--server", o.server)->required()->check(CLI::IsMember({1, 2}));
  eval->add_option("--params", o.params)->required();
  eval->add_option("--ek", o.ek)->required();
  eval->add_option("--program", o.program, "program text or .vhss")->required();
  eval->add_option("--ct", o.cts, "input ciphertexts, in order");
  eval->add_option("--out", o.out)->required();

  auto* verify = app.add_subcommand("verify", "Combine and check partials");
  verify->add_option("--params", o.params)->required();
  verify->add_option("--vk", o.vk)->required();
  verify->add_option("--y1", o.y1)->required();
  verify->add_option("--y2", o.y2)->required();

  auto* game = app.add_subcommand("game", "Run a security experiment");
  game->add_option("kind", o.game)
      ->required()
      ->check(CLI::IsMember({"correctness", "verifiability", "hiding"}));
  game->add_option("--profile", o.profile, "toy, toy:<r> or table2:<B_max>");
  game->add_option("--trials", o.trials, "trials (samples for hiding)");
  game->add_option("--strategy", o.strategy,
                   "all, uniform, perturb, scaled-tag, stale-replay, "
                   "white-box or none");
  game->add_option("--max-size", o.max_size, "largest generated program");

  auto* bench = app.add_subcommand("bench", "Time the evaluation subroutines");
  bench->add_option("--profile", o.profile, "default table2:2^32");
  bench->add_option("--reps", o.reps, "repetitions per median (default 5)");
  bench->add_option("--sweep", o.sweep, "monomial degrees, e.g. 3,5,7")
      ->delimiter(',');

  auto* selftest = app.add_subcommand("selftest", "Quick end-to-end check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    seeds.Resolve(o.seed);
    if (derive->parsed()) return ParamsDerive(o);
    if (show->parsed()) return ParamsShow(o);
    if (keygen->parsed()) return Keygen(o, seeds);
    if (encrypt->parsed()) return EncryptCmd(o, seeds);
    if (eval->parsed()) return EvalCmd(o);
    if (verify->parsed()) return VerifyCmd(o);
    if (game->parsed()) return GameCmd(o, seeds);
    if (bench->parsed()) return BenchCmd(o, seeds);
    if (selftest->parsed()) return Selftest(seeds);
  } catch (const DecodeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    // ValidationError, ParameterError, DomainError, DimensionError.
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}

}  // namespace vhss
