// Copyright 2026 The ultragas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ULTRAGAS_ENGINE_HPP
#define ULTRAGAS_ENGINE_HPP

#include <functional>
#include <string>

#include "ultragas/chains.hpp"
#include "ultragas/exponents.hpp"
#include "ultragas/scalar.hpp"

namespace ultragas {

enum class Mode { exact, symbolic, floating };

std::string to_string(Mode mode);

/// The residue-field size q together with the arithmetic used to evaluate.
///
/// Exact mode keeps q as a positive rational; symbolic mode leaves q as an
/// indeterminate (results are rational functions in q and y = q^beta);
/// floating mode evaluates in complex double precision.
struct Field {
  Mode mode = Mode::exact;
  Rational q_exact = 2;
  double q = 2.0;

  static Field exact(Rational q);
  static Field symbolic();
  static Field floating(double q);

  /// q as a positive integer when it is one (any mode but symbolic).
  std::optional<long> integer_q() const;
};

/// Closed ball pi^v R (R for v = 0, P for v = 1) or the projective line.
struct SpaceSpec {
  enum class Kind { ball, projective };
  Kind kind = Kind::ball;
  int v = 0;

  static SpaceSpec R() { return {Kind::ball, 0}; }
  static SpaceSpec P() { return {Kind::ball, 1}; }
  static SpaceSpec ball(int v) { return {Kind::ball, v}; }
  static SpaceSpec projective() { return {Kind::projective, 0}; }

  /// "R", "P", "ball:v" or "proj".
  std::string name() const;
  /// Inverse of name(); throws std::invalid_argument on anything else.
  static SpaceSpec parse(const std::string& text);

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

struct EngineOptions {
  ChainLimits limits;
  /// Receives a one-line message when exact evaluation falls back to floats.
  std::function<void(const std::string&)> warn;
};

/// Integral over (pi^v R)^I by summation over the reduced chains of I.
/// Throws DivergenceError outside the convergence domain (restricted to I)
/// or at a pole, std::invalid_argument for q <= 0, and std::invalid_argument
/// ("symbolic mode requires integer exponents") when symbolic evaluation is
/// asked for exponents that are not integer multiples of beta.
ScalarValue z_ball(const IndexSet& I, int v, const ExponentSpec& spec, const Field& field,
                   const EngineOptions& options = {});

ScalarValue z_R(const ExponentSpec& spec, const Field& field, const EngineOptions& options = {});
ScalarValue z_P(const ExponentSpec& spec, const Field& field, const EngineOptions& options = {});

/// Projective-line partition function by summation over reduced chains, with
/// the root factor q + 1 - deg cancelled analytically so that every q > 0 is
/// admissible.
ScalarValue z_proj(const ExponentSpec& spec, const Field& field, const EngineOptions& options = {});

/// Projective-line partition function through the decomposition into q + 1
/// balls: (q/(q+1))^N times the sum over ordered (q+1)-part partitions of the
/// products of ball integrals over P. Requires q to be an integer >= 2
/// (std::invalid_argument "cell decomposition requires integer q").
ScalarValue z_proj_cells(const ExponentSpec& spec, const Field& field,
                         const EngineOptions& options = {});

/// Independent oracle for the ball integrals: the self-similarity of R under
/// its q cosets, solved recursively for the all-in-one-coset term. `space`
/// must be R or P; symbolic mode is rejected.
ScalarValue z_coset_oracle(const IndexSet& I, const ExponentSpec& spec, const Field& field,
                           const SpaceSpec& space, const EngineOptions& options = {});

/// Dispatch on the space: balls use z_ball on [N], the projective line z_proj.
ScalarValue evaluate(const SpaceSpec& space, const ExponentSpec& spec, const Field& field,
                     const EngineOptions& options = {});

/// Free energy, mean energy and energy fluctuation of a gas with fixed
/// charges at inverse temperature beta.
struct Observables {
  double free_energy = 0;
  double mean_energy = 0;
  double fluctuation = 0;
};

/// -log Z, -d/dbeta log Z and d^2/dbeta^2 log Z, the derivatives from
/// central differences with step max(1e-5, 1e-5 |beta|) and one Richardson
/// extrapolation. Throws DivergenceError if any stencil point leaves the
/// domain.
Observables observables(const SpaceSpec& space, const std::vector<Rational>& charges,
                        double beta, double q, const EngineOptions& options = {});

}  // namespace ultragas

#endif  // ULTRAGAS_ENGINE_HPP
