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

#include "vhss/harness.h"

#include <algorithm>
#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <variant>

#include "vhss/errors.h"

namespace vhss {

namespace {

RingElement SmallInput(const Params& params, const Magnitude& m,
                       RngHandle& rng) {
  const size_t n = params.n;
  const mpz_class bound = std::min(m.bound, params.r.half());
  const size_t top = std::min(m.degree, n - 1);
  std::vector<mpz_class> c(n, 0);
  const uint64_t width = 2 * bound.get_ui() + 1;
  for (size_t i = 0; i <= top; ++i) {
    c[i] = static_cast<long>(rng.UniformBelow(width)) - bound.get_si();
  }
  return RingElement::FromIntegers(n, params.r, c);
}

std::vector<RingElement> RandomInputs(const Params& params,
                                      const ValidatedProgram& program,
                                      RngHandle& rng) {
  std::vector<RingElement> out;
  for (const Magnitude& m : program.inputs) {
    out.push_back(SmallInput(params, m, rng));
  }
  return out;
}

std::vector<KdmCiphertext> EncryptAll(const Params& params,
                                      const PublicKey& pk,
                                      std::span<const RingElement> xs,
                                      RngHandle& rng) {
  std::vector<KdmCiphertext> cts;
  for (const auto& x : xs) cts.push_back(Encrypt(params, pk, x, rng));
  return cts;
}

RingElement NonZeroUniform(const Params& params, RngHandle& rng) {
  for (;;) {
    RingElement d = SampleUniform(params.n, params.r, rng);
    if (!d.IsZero()) return d;
  }
}

std::string Sci(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

double ToDouble(const mpq_class& v) { return v.get_d(); }

template <typename F>
double MedianMs(int reps, F&& f) {
  std::vector<double> ms;
  for (int i = 0; i < std::max(1, reps); ++i) {
    auto start = std::chrono::steady_clock::now();
    f();
    auto stop = std::chrono::steady_clock::now();
    ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
  }
  std::sort(ms.begin(), ms.end());
  return ms[ms.size() / 2];
}

}  // namespace

RingElement PlaintextOracle(const Params& params,
                            const ValidatedProgram& program,
                            std::span<const RingElement> inputs) {
  if (inputs.size() < program.n_inputs) {
    throw ValidationError("oracle needs " + std::to_string(program.n_inputs) +
                          " inputs");
  }
  std::map<uint32_t, RingElement> cts, regs;
  for (size_t i = 0; i < inputs.size(); ++i) cts.emplace(i, inputs[i]);
  for (const Instruction& ins : program.program.instructions) {
    if (const auto* i = std::get_if<op::Load>(&ins)) {
      regs.insert_or_assign(i->dst.index, cts.at(i->src.index));
    } else if (const auto* i = std::get_if<op::AddMem>(&ins)) {
      regs.insert_or_assign(i->dst.index,
                            regs.at(i->lhs.index) + regs.at(i->rhs.index));
    } else if (const auto* i = std::get_if<op::AddCt>(&ins)) {
      cts.insert_or_assign(i->dst.index,
                           cts.at(i->lhs.index) + cts.at(i->rhs.index));
    } else if (const auto* i = std::get_if<op::CMult>(&ins)) {
      auto c = RingElement::FromIntegers(params.n, params.r, i->constant);
      regs.insert_or_assign(i->dst.index, c * cts.at(i->src.index));
    } else if (const auto* i = std::get_if<op::Mult>(&ins)) {
      regs.insert_or_assign(i->dst.index,
                            regs.at(i->mem.index) * cts.at(i->src.index));
    } else if (const auto* i = std::get_if<op::Output>(&ins)) {
      return regs.at(i->src.index);
    }
  }
  throw ValidationError("program has no output instruction");
}

GeneratedProgram RandomProgram(const Params& params, RngHandle& rng,
                               const GeneratorOptions& options) {
  if (options.max_size < 2 || options.max_inputs < 1 ||
      options.max_degree < 1) {
    throw ParameterError("generator needs max_size >= 2 and max_degree >= 1");
  }
  const size_t n = params.n;
  const mpz_class half = std::max<mpz_class>(params.r.half(), 1);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Program prog;
    const uint32_t k = 1 + rng.UniformBelow(options.max_inputs);
    prog.n_inputs = k;
    std::vector<std::pair<CtId, uint32_t>> cts;  // slot, summands
    for (uint32_t i = 0; i < k; ++i) {
      Magnitude m = rng.UniformBelow(2)
                        ? Magnitude{mpz_class(1 + rng.UniformBelow(3)), 0}
                        : Magnitude{1, n - 1};
      m.bound = std::min(m.bound, half);
      prog.input_bounds.emplace_back(CtId{i}, m);
      cts.emplace_back(CtId{i}, 1);
    }
    std::vector<std::pair<RegId, size_t>> regs;  // register, degree
    uint32_t next_ct = k;

    auto accepts = [&](const Instruction& ins, std::optional<RegId> out) {
      Program trial = prog;
      trial.instructions.push_back(ins);
      if (!out && !regs.empty()) out = regs.back().first;
      if (!out) return false;
      trial.instructions.push_back(op::Output{*out});
      try {
        ValidateProgram(trial, params);
        return true;
      } catch (const ValidationError&) {
        return false;
      }
    };
    auto pick_ct = [&] { return cts[rng.UniformBelow(cts.size())]; };
    auto random_constant = [&] {
      std::vector<mpz_class> c(1 + rng.UniformBelow(std::min<size_t>(3, n)));
      for (auto& v : c) v = static_cast<long>(rng.UniformBelow(7)) - 3;
      if (c[0] == 0) c[0] = 1;
      return c;
    };

    const size_t target = 2 + rng.UniformBelow(options.max_size - 1);
    for (int tries = 0;
         prog.instructions.size() + 1 < target && tries < 400; ++tries) {
      const RegId dst{static_cast<uint32_t>(regs.size())};
      uint64_t roll = rng.UniformBelow(100);
      if (regs.empty()) roll = 50 + rng.UniformBelow(25);  // Load or cMult
      if (roll < 50) {  // Mult, mostly off the newest register
        const auto& mem = rng.UniformBelow(10) < 7
                              ? regs.back()
                              : regs[rng.UniformBelow(regs.size())];
        if (mem.second + 1 > options.max_degree) continue;
        Instruction ins = op::Mult{dst, mem.first, pick_ct().first};
        if (!accepts(ins, dst)) continue;
        prog.instructions.push_back(ins);
        regs.emplace_back(dst, mem.second + 1);
      } else if (roll < 65) {  // Load
        Instruction ins = op::Load{dst, pick_ct().first};
        if (!accepts(ins, dst)) continue;
        prog.instructions.push_back(ins);
        regs.emplace_back(dst, 1);
      } else if (roll < 75) {  // cMult
        Instruction ins = op::CMult{dst, random_constant(), pick_ct().first};
        if (!accepts(ins, dst)) continue;
        prog.instructions.push_back(ins);
        regs.emplace_back(dst, 1);
      } else if (roll < 88) {  // Add1
        const auto& a = regs[rng.UniformBelow(regs.size())];
        const auto& b = regs[rng.UniformBelow(regs.size())];
        Instruction ins = op::AddMem{dst, a.first, b.first};
        if (!accepts(ins, dst)) continue;
        prog.instructions.push_back(ins);
        regs.emplace_back(dst, std::max(a.second, b.second));
      } else {  // Add2
        const auto a = pick_ct(), b = pick_ct();
        if (a.second + b.second > params.b_add) continue;
        const CtId out{next_ct};
        Instruction ins = op::AddCt{out, a.first, b.first};
        if (!accepts(ins, std::nullopt)) continue;
        prog.instructions.push_back(ins);
        cts.emplace_back(out, a.second + b.second);
        ++next_ct;
      }
    }
    if (regs.empty()) continue;
    prog.instructions.push_back(op::Output{regs.back().first});
    GeneratedProgram g{ValidateProgram(prog, params), {}};
    g.inputs = RandomInputs(params, g.program, rng);
    return g;
  }
  throw ParameterError(
      "could not generate a valid program for these parameters");
}

std::string GameReport::Format() const {
  std::ostringstream out;
  out << "game=" << game << '\n'
      << "trials=" << trials << '\n'
      << "events=" << events << '\n'
      << "rate=" << Sci(trials ? double(events) / trials : 0.0) << '\n'
      << "bound=" << Sci(bound) << '\n';
  for (const auto& [k, v] : details) out << k << '=' << v << '\n';
  out << "pass=" << (pass ? "true" : "false") << '\n';
  return out.str();
}

GameReport RunCorrectnessGame(const Params& params, uint64_t trials,
                              RngHandle& rng,
                              const GeneratorOptions& options) {
  GameReport report{.game = "correctness", .trials = trials};
  mpq_class worst = 0;
  uint64_t total_size = 0, rejected = 0;
  size_t max_degree = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    KeyBundle keys = KeyGen(params, rng);
    GeneratedProgram g = RandomProgram(params, rng, options);
    auto cts = EncryptAll(params, keys.pk, g.inputs, rng);
    auto y1 = Evaluate(params, keys.ek1, cts, g.program);
    auto y2 = Evaluate(params, keys.ek2, cts, g.program);
    auto y = Verify(params, keys.vk, y1, y2);
    const RingElement expect = PlaintextOracle(params, g.program, g.inputs);
    if (!y) ++rejected;
    if (!y || *y != expect) ++report.events;
    worst = std::max<mpq_class>(worst, 1 - g.program.correctness_bound);
    total_size += g.program.size;
    max_degree = std::max(max_degree, g.program.degree);
  }
  report.bound = ToDouble(worst);
  mpq_class allowed = worst * static_cast<unsigned long>(trials);
  report.pass = mpq_class(static_cast<unsigned long>(report.events)) <= allowed ||
                report.events == 0;
  report.details = {
      {"params_n", std::to_string(params.n)},
      {"params_lg_q", std::to_string(Log2Floor(params.q.value()))},
      {"rejected", std::to_string(rejected)},
      {"mean_size", Sci(trials ? double(total_size) / trials : 0.0)},
      {"max_degree", std::to_string(max_degree)},
  };
  return report;
}

const char* TamperName(Tamper tamper) {
  switch (tamper) {
    case Tamper::kNone: return "none";
    case Tamper::kUniform: return "uniform";
    case Tamper::kPerturb: return "perturb";
    case Tamper::kScaledTag: return "scaled-tag";
    case Tamper::kStaleReplay: return "stale-replay";
    case Tamper::kWhiteBox: return "white-box";
  }
  return "?";
}

Tamper ParseTamper(const std::string& name) {
  for (Tamper t : {Tamper::kNone, Tamper::kUniform, Tamper::kPerturb,
                   Tamper::kScaledTag, Tamper::kStaleReplay,
                   Tamper::kWhiteBox}) {
    if (name == TamperName(t)) return t;
  }
  throw ParameterError("unknown tamper strategy '" + name + "'");
}

std::vector<Tamper> AdversarialTampers() {
  return {Tamper::kUniform, Tamper::kPerturb, Tamper::kScaledTag,
          Tamper::kStaleReplay};
}

GameReport RunVerifiabilityGame(const Params& params, uint64_t trials,
                                Tamper tamper, RngHandle& rng,
                                const GeneratorOptions& options) {
  GameReport report{.game = std::string("verifiability/") + TamperName(tamper),
                    .trials = trials};
  uint64_t accepted = 0, accepted_correct = 0, redrawn = 0;
  for (uint64_t t = 0; t < trials;) {
    KeyBundle keys = KeyGen(params, rng);
    GeneratedProgram g = RandomProgram(params, rng, options);
    auto cts = EncryptAll(params, keys.pk, g.inputs, rng);
    const int b = 1 + static_cast<int>(rng.UniformBelow(2));
    const EvaluationKey& mine = b == 1 ? keys.ek1 : keys.ek2;
    const EvaluationKey& theirs = b == 1 ? keys.ek2 : keys.ek1;
    const PartialResult honest = Evaluate(params, mine, cts, g.program);
    const PartialResult other = Evaluate(params, theirs, cts, g.program);
    const RingElement truth = PlaintextOracle(params, g.program, g.inputs);

    PartialResult forged = honest;
    switch (tamper) {
      case Tamper::kNone:
        break;
      case Tamper::kUniform:
        while (forged == honest) {
          forged = {SampleUniform(params.n, params.r, rng),
                    SampleUniform(params.n, params.r, rng)};
        }
        break;
      case Tamper::kPerturb: {
        std::vector<mpz_class> c(forged.t.coeffs().begin(),
                                 forged.t.coeffs().end());
        const size_t i = rng.UniformBelow(params.n);
        c[i] += 1 + rng.UniformMod(params.r.value() - 1);
        forged.t = RingElement::FromIntegers(params.n, params.r, c);
        break;
      }
      case Tamper::kScaledTag: {
        const RingElement dy = NonZeroUniform(params, rng);
        const RingElement guess = SampleUniform(params.n, params.r, rng);
        forged = {honest.t + dy, honest.tau + guess * dy};
        break;
      }
      case Tamper::kStaleReplay:
        for (int tries = 0; forged == honest && tries < 3; ++tries) {
          auto stale = RandomInputs(params, g.program, rng);
          auto stale_cts = EncryptAll(params, keys.pk, stale, rng);
          forged = Evaluate(params, mine, stale_cts, g.program);
        }
        break;
      case Tamper::kWhiteBox: {
        const RingElement dy = NonZeroUniform(params, rng);
        forged = {honest.t + dy,
                  honest.tau + ReduceTo(keys.vk.s_hat, params.r) * dy};
        break;
      }
    }
    if (tamper != Tamper::kNone && forged == honest) {
      // Output independent of the inputs (e.g. r - r): nothing to replay.
      ++redrawn;
      continue;
    }
    ++t;
    auto y = b == 1 ? Verify(params, keys.vk, forged, other)
                    : Verify(params, keys.vk, other, forged);
    if (!y) continue;
    ++accepted;
    if (*y == truth) {
      ++accepted_correct;

    } else {
      ++report.events;
    }
  }

  const double q_queries = 1;
  report.bound = std::ldexp(4 * q_queries, -static_cast<int>(std::min<size_t>(
                                               params.n, 4000)));
  double upper = 1;
  if (trials > 0) {
    upper = boost::math::binomial_distribution<>::find_upper_bound_on_p(
        static_cast<double>(trials), static_cast<double>(report.events), 0.01,
        boost::math::binomial_distribution<>::clopper_pearson_exact_interval);
  }
  report.details = {
      {"queries_per_key", "1"},
      {"accepted", std::to_string(accepted)},
      {"accepted_correct", std::to_string(accepted_correct)},
      {"redrawn", std::to_string(redrawn)},
      {"cp_upper_99", Sci(upper)},
  };
  switch (tamper) {
    case Tamper::kNone:
      report.pass = report.events == 0 && accepted_correct == trials;
      break;
    case Tamper::kWhiteBox:
      report.pass = report.events == trials;
      break;
    default:
      if (upper <= report.bound) {
        report.pass = true;
      } else {
        // Too few trials to resolve a bound this small: require no forgery.
        report.details.emplace_back("resolution", "insufficient");
        report.pass = report.events == 0;
      }
  }
  return report;
}

std::pair<PartialResult, PartialResult> ContextHidingSim(
    const Params& params, const VerificationKey& vk, const RingElement& y,
    RngHandle& rng) {
  const RingElement t1 = SampleUniform(params.n, params.r, rng);
  const RingElement tau1 = SampleUniform(params.n, params.r, rng);
  const RingElement tag = ReduceTo(vk.s_hat, params.r) * y;
  return {PartialResult{t1, tau1}, PartialResult{y - t1, tag - tau1}};
}

ChiSquare ChiSquareHomogeneity(std::span<const uint64_t> a,
                               std::span<const uint64_t> b) {
  if (a.size() != b.size()) {
    throw DimensionError("histograms differ in length");
  }
  double na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    na += a[i];
    nb += b[i];
  }
  ChiSquare out;
  if (na == 0 || nb == 0) return out;
  size_t used = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double total = double(a[i]) + double(b[i]);
    if (total == 0) continue;
    ++used;
    const double ea = total * na / (na + nb);
    const double eb = total * nb / (na + nb);
    out.statistic += (a[i] - ea) * (a[i] - ea) / ea + (b[i] - eb) * (b[i] - eb) / eb;
  }
  if (used < 2) return out;
  out.dof = used - 1;
  out.p_value = boost::math::cdf(
      boost::math::complement(boost::math::chi_squared(out.dof), out.statistic));
  return out;
}

GameReport RunHidingGame(const Params& params, uint64_t samples,
                         RngHandle& rng, double alpha) {
  GameReport report{.game = "hiding", .trials = 0, .bound = alpha};
  const uint64_t bins = params.r.value() < 16 ? params.r.value().get_ui() : 16;
  auto bin_of = [&](const mpz_class& c) {
    mpz_class b = c * bins / params.r.value();
    return b.get_ui();
  };
  std::vector<uint64_t> honest(bins, 0), simulated(bins, 0);
  uint64_t collected = 0, broken = 0;
  const GeneratorOptions small{.max_size = 8, .max_degree = 4};
  while (collected < samples) {
    KeyBundle keys = KeyGen(params, rng);
    GeneratedProgram g = RandomProgram(params, rng, small);
    auto cts = EncryptAll(params, keys.pk, g.inputs, rng);
    auto y1 = Evaluate(params, keys.ek1, cts, g.program);
    auto y2 = Evaluate(params, keys.ek2, cts, g.program);
    const RingElement truth = PlaintextOracle(params, g.program, g.inputs);
    auto sim = ContextHidingSim(params, keys.vk, truth, rng);
    auto y = Verify(params, keys.vk, y1, y2);
    auto ys = Verify(params, keys.vk, sim.first, sim.second);
    ++report.trials;
    if (!y || *y != truth || !ys || *ys != truth) ++broken;
    for (size_t i = 0; i < params.n && collected < samples; ++i, ++collected) {
      ++honest[bin_of(y1.t[i])];
      ++simulated[bin_of(sim.first.t[i])];
    }
  }
  const ChiSquare chi = ChiSquareHomogeneity(honest, simulated);
  report.events = broken;
  report.pass = broken == 0 && chi.p_value >= alpha;
  report.details = {
      {"samples", std::to_string(samples)},
      {"bins", std::to_string(bins)},
      {"chi2", Sci(chi.statistic)},
      {"dof", std::to_string(chi.dof)},
      {"p_value", Sci(chi.p_value)},
  };
  return report;
}

std::vector<Timing> BenchSubroutines(const Params& params, int reps,
                                     RngHandle& rng) {
  KeyBundle keys = KeyGen(params, rng);
  const EvaluationKey& ek = keys.ek1;
  const KdmCiphertext c = EncryptScalar(params, keys.pk, 2, rng);
  const RingElement three = RingElement::Constant(params.n, params.r, 3);
  const MemoryShare share = EvalLoad(params, ek, 0, c);  // also warms caches
  uint64_t id = 1;
  std::vector<Timing> out;
  out.push_back({"Load", MedianMs(reps, [&] { EvalLoad(params, ek, id++, c); })});
  out.push_back({"Add1", MedianMs(reps, [&] {
                   EvalAddMem(params, ek, id++, share, share);
                 })});
  out.push_back({"Add2", MedianMs(reps, [&] { EvalAddCt(c, c); })});
  out.push_back({"cMult", MedianMs(reps, [&] {
                   EvalCMult(params, ek, id++, three, c);
                 })});
  out.push_back({"Mult", MedianMs(reps, [&] {
                   EvalMult(params, ek, id++, share, c);
                 })});
  out.push_back({"Output", MedianMs(reps, [&] { EvalOutput(params, share); })});
  return out;
}

std::vector<SweepPoint> DegreeSweep(const Params& params,
                                    std::span<const size_t> degrees, int reps,
                                    RngHandle& rng) {
  KeyBundle keys = KeyGen(params, rng);
  const std::vector<KdmCiphertext> cts{EncryptScalar(params, keys.pk, 2, rng)};
  std::vector<ValidatedProgram> progs;
  for (size_t d : degrees) {
    if (d == 0) throw ParameterError("degree must be positive");
    std::string text = "input ct0 bound=2 degree=0\nload r0 ct0\n";
    for (size_t i = 1; i < d; ++i) {
      text += "mult r" + std::to_string(i) + " r" + std::to_string(i - 1) +
              " ct0\n";
    }
    text += "output r" + std::to_string(d - 1) + "\n";
    progs.push_back(ValidateProgram(ParseProgram(text), params));
  }
  // Rounds visit every degree once, so slow drift in machine speed lands on
  // all points alike instead of bending the curve.
  Evaluate(params, keys.ek1, cts, progs.front());  // warm-up
  std::vector<std::vector<double>> ms(progs.size());
  for (int rep = 0; rep < std::max(1, reps); ++rep) {
    for (size_t i = 0; i < progs.size(); ++i) {
      ms[i].push_back(MedianMs(1, [&] { Evaluate(params, keys.ek1, cts, progs[i]); }));
    }
  }
  std::vector<SweepPoint> out;
  for (size_t i = 0; i < progs.size(); ++i) {
    out.push_back({degrees[i], *std::min_element(ms[i].begin(), ms[i].end())});
  }
  return out;
}

double LinearFitR2(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DimensionError("need at least two matching points");
  }
  const double n = x.size();
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) throw DimensionError("x values are all equal");
  if (syy == 0) return 1;
  return sxy * sxy / (sxx * syy);
}

}  // namespace vhss
