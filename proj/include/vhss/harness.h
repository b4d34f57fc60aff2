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

// Executable experiments around the scheme: a plaintext reference evaluator,
// a random program generator, the correctness / verifiability / context
// hiding games and the subroutine benchmarks.

#ifndef VHSS_HARNESS_H_
#define VHSS_HARNESS_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vhss/params.h"
#include "vhss/program.h"
#include "vhss/ring.h"
#include "vhss/sampling.h"
#include "vhss/vhss.h"

namespace vhss {

// f(inputs) computed directly over R_r. Throws ValidationError if fewer
// inputs than the program needs are given.
RingElement PlaintextOracle(const Params& params,
                            const ValidatedProgram& program,
                            std::span<const RingElement> inputs);

struct GeneratorOptions {
  size_t max_size = 32;    // instructions, including the output
  size_t max_degree = 11;  // multiplicative degree of any register
  size_t max_inputs = 4;
};

struct GeneratedProgram {
  ValidatedProgram program;
  std::vector<RingElement> inputs;  // over R_r, within the promised bounds
};

// Draws a program the validator accepts together with matching inputs.
// About half of the steps extend a Mult chain off the newest register; the
// rest are Load, cMult, Add1 and (when B_add > 1) Add2. Inputs are scalars
// (degree 0, bound up to 3) or small full polynomials (bound 1) with equal
// odds, capped at floor(r/2).
GeneratedProgram RandomProgram(const Params& params, RngHandle& rng,
                               const GeneratorOptions& options = {});

// One experiment's outcome, printed as key=value lines.
struct GameReport {
  std::string game;
  uint64_t trials = 0;
  // Failures (correctness) or accepted wrong outputs (verifiability).
  uint64_t events = 0;
  // Upper limit the observed rate is compared against.
  double bound = 0;
  bool pass = false;
  std::vector<std::pair<std::string, std::string>> details = {};

  std::string Format() const;
};

// Per trial: fresh keys, a random program and inputs, both servers, Ver,
// compare with PlaintextOracle. Passes when the failure count does not
// exceed trials * (1 - worst per-trial theory bound), rounded down.
GameReport RunCorrectnessGame(const Params& params, uint64_t trials,
                              RngHandle& rng,
                              const GeneratorOptions& options = {});

enum class Tamper {
  kNone,         // honest partial (must be accepted, never a forgery)
  kUniform,      // both components replaced by uniform values
  kPerturb,      // one coefficient of t shifted, tau kept
  kScaledTag,    // delta_tau = c * delta_y for a uniform guess c
  kStaleReplay,  // honest partial computed on different inputs
  kWhiteBox,     // delta_tau = s_hat * delta_y (uses the secret; must win)
};

const char* TamperName(Tamper tamper);
// Accepts the names printed by TamperName. Throws ParameterError.
Tamper ParseTamper(const std::string& name);
// The four black-box strategies.
std::vector<Tamper> AdversarialTampers();

// Fresh keys per trial, so each key pair sees Q = 1 verification query. The
// adversary holds ek_b for a random b and replaces y_b. Trials where the
// strategy cannot change y_b (an output that ignores its inputs, under
// replay) are redrawn and do not count. For black-box
// strategies the pass rule is: the 99% Clopper-Pearson upper limit on the
// forgery rate is at most 4 Q / 2^N. kWhiteBox passes iff every trial
// forges; kNone passes iff every trial is accepted with the right output.
GameReport RunVerifiabilityGame(const Params& params, uint64_t trials,
                                Tamper tamper, RngHandle& rng,
                                const GeneratorOptions& options = {});

// Simulated partials for output y: t1', tau1' uniform over R_r,
// t2' = y - t1', tau2' = s_hat y - tau1'.
std::pair<PartialResult, PartialResult> ContextHidingSim(
    const Params& params, const VerificationKey& vk, const RingElement& y,
    RngHandle& rng);

struct ChiSquare {
  double statistic = 0;
  size_t dof = 0;
  double p_value = 1;
};

// Two-sample homogeneity test over matching histograms; empty bins in both
// samples are dropped.
ChiSquare ChiSquareHomogeneity(std::span<const uint64_t> a,
                               std::span<const uint64_t> b);

// Collects `samples` coefficients of honest t1 mod r (random programs,
// fresh keys per run) and as many from the simulator, bins them by residue
// (r <= 64) and runs the homogeneity test at level alpha. Also checks that
// every honest and simulated pair verifies to f(x).
GameReport RunHidingGame(const Params& params, uint64_t samples,
                         RngHandle& rng, double alpha = 0.01);

struct Timing {
  std::string name;
  double median_ms = 0;
};

// Median wall-clock per subroutine for server 1, in the order Load, Add1,
// Add2, cMult, Mult, Output.
std::vector<Timing> BenchSubroutines(const Params& params, int reps,
                                     RngHandle& rng);

struct SweepPoint {
  size_t degree;
  double best_ms;
};

// Server-1 evaluation time of the monomial x^d (scalar input x = 2): the
// fastest of `reps` rounds, each round timing every degree once. Host noise
// only ever adds time, so the minimum tracks the work actually done.
std::vector<SweepPoint> DegreeSweep(const Params& params,
                                    std::span<const size_t> degrees, int reps,
                                    RngHandle& rng);

// Coefficient of determination of the least-squares line through (x, y).
double LinearFitR2(std::span<const double> x, std::span<const double> y);

}  // namespace vhss

#endif  // VHSS_HARNESS_H_
