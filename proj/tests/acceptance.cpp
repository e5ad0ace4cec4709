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

// Acceptance checks: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "ultragas/chains.hpp"
#include "ultragas/engine.hpp"
#include "ultragas/grand.hpp"
#include "ultragas/recurrence.hpp"
#include "ultragas/sampler.hpp"
#include "ultragas/workers.hpp"

namespace {

using namespace ultragas;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

Rational qpow(const Rational& q, long e) {
  Rational r = 1;
  for (long i = 0; i < std::labs(e); ++i) r *= q;
  return e < 0 ? Rational(1 / r) : r;
}

double rel(Complex a, Complex b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0 ? 0.0 : std::abs(a - b) / scale;
}

std::vector<Rational> ladder(int n) {
  std::vector<Rational> c;
  for (int i = 1; i <= n; ++i) c.emplace_back(i);
  return c;
}

// Closed form for charges (1, 2, 3) on the unit ball.
Rational three_charge_exact(long p, long b) {
  const Rational P(p);
  const Rational bracket =
      1 / (qpow(P, 1 + 2 * b) - 1) + 1 / (qpow(P, 1 + 3 * b) - 1) + 1 / (qpow(P, 1 + 6 * b) - 1);
  return qpow(P, 11 * b) / (qpow(P, 2 + 11 * b) - 1) * ((P - 1) * (P - 2) + (P - 1) * (P - 1) * bracket);
}

double three_charge_float(double p, double b) {
  const double bracket = 1 / (std::pow(p, 1 + 2 * b) - 1) + 1 / (std::pow(p, 1 + 3 * b) - 1) +
                         1 / (std::pow(p, 1 + 6 * b) - 1);
  return std::pow(p, 11 * b) / (std::pow(p, 2 + 11 * b) - 1) * ((p - 1) * (p - 2) + (p - 1) * (p - 1) * bracket);
}

Outcome three_charges() {
  Outcome o;
  for (auto [p, b] : {std::pair<long, long>{2, 1}, {3, 2}}) {
    const Rational z = z_R(ExponentSpec::from_charges({1, 2, 3}, Rational(b)), Field::exact(p)).exact();
    o.require(z == three_charge_exact(p, b), "exact mismatch at p=" + std::to_string(p));
  }
  const double z = z_R(ExponentSpec::from_charges({1, 2, 3}, Rational(1, 2)), Field::floating(5.0)).complex().real();
  o.require(rel(z, three_charge_float(5.0, 0.5)) <= 1e-12, "float mismatch at p=5");
  return o;
}

Outcome chain_counts() {
  Outcome o;
  const std::vector<long> expected{1, 4, 26, 236, 2752};
  for (int n = 2; n <= 6; ++n) {
    std::size_t streamed = 0;
    enumerate_reduced_chains(IndexSet::range(n), [&](const ReducedChain&) { ++streamed; });
    o.require(count_reduced_chains(n) == expected[n - 2], "count at n=" + std::to_string(n));
    o.require(streamed == static_cast<std::size_t>(expected[n - 2]), "stream length at n=" + std::to_string(n));
  }
  return o;
}

Outcome oracle_grid() {
  Outcome o;
  for (int n = 2; n <= 5; ++n) {
    for (long q : {2, 3, 4}) {
      for (long b : {1, 2}) {
        for (const auto& charges : {std::vector<Rational>(n, 1), ladder(n)}) {
          const auto spec = ExponentSpec::from_charges(charges, Rational(b));
          const Field f = Field::exact(q);
          const std::string at = " at n=" + std::to_string(n) + " q=" + std::to_string(q);
          o.require(z_R(spec, f) == z_coset_oracle(IndexSet::range(n), spec, f, SpaceSpec::R()), "ball" + at);
          o.require(z_proj(spec, f) == z_proj_cells(spec, f), "projective" + at);
        }
      }
    }
  }
  return o;
}

Outcome recurrence_grid() {
  Outcome o;
  double worst = 0;
  for (int n = 2; n <= 8; ++n) {
    for (double q : {2.0, 3.0, 4.0, 5.0}) {
      for (double b : {0.5, 1.0, 2.0}) {
        const auto spec = ExponentSpec::uniform(n, Complex(b));
        const Complex r = z_R(spec, Field::floating(q)).complex();
        const Complex p = z_proj(spec, Field::floating(q)).complex();
        worst = std::max({worst, rel(z_R_fast(n, q, b), r), rel(z_proj_fast(n, q, b), p)});
      }
    }
  }
  std::ostringstream s;
  s << "worst relative difference " << worst;
  o.require(worst <= 1e-10, s.str());
  o.detail = s.str();
  return o;
}

Outcome power_laws() {
  Outcome o;
  for (long q : {2, 3}) {
    for (long b : {1, 2}) {
      for (const LawReport& report : verify_all(q, b, 8, Mode::exact)) {
        o.require(report.passed(), "law " + report.law + " at q=" + std::to_string(q) + " beta=" + std::to_string(b));
      }
    }
  }
  const char* argv[] = {"ultragas", "verify", "--law", "all", "--q", "3", "--beta", "2", "--n-max", "8", "--mode", "exact"};
  std::ostringstream out, err;
  o.require(cli::main(12, argv, out, err) == cli::kExitOk, "verify --law all exit code");
  return o;
}

Outcome functional_equations() {
  Outcome o;
  std::mt19937_64 rng(20261015);
  double worst = 0;
  for (int n = 2; n <= 6; ++n) {
    std::uniform_real_distribution<double> qd(0.1, 10.0), bd(-2.0 / n + 0.1, 3.0);
    for (int i = 0; i < 50; ++i) {
      const double q = qd(rng), b = bd(rng);
      const Complex lhs = z_R_fast(n, 1 / q, b);
      const Complex rhs = std::pow(q, -0.5 * n * (n - 1) * b) * z_R_fast(n, q, b);
      worst = std::max({worst, rel(lhs, rhs), rel(z_proj_fast(n, 1 / q, b), z_proj_fast(n, q, b))});
    }
  }
  std::ostringstream s;
  s << "worst relative difference " << worst;
  o.require(worst <= 1e-10, s.str());
  o.detail = s.str();
  return o;
}

// Relative above 1, absolute below (some limits vanish exactly).
double mixed(Complex a, Complex b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

// Balls: symmetric average of q = 1 +- h; the projective line is even in log q.
Outcome q_to_one() {
  Outcome o;
  for (double b : {0.5, 1.0, 2.0, 3.5}) {
    o.require(std::abs(q_to_1_limit(2, b, SpaceSpec::R()).real() - 1 / (1 + b)) <= 1e-15, "two-point limit");
  }
  const double h = 1e-4;
  double worst = 0;
  for (int n = 2; n <= 6; ++n) {
    for (double b : {0.5, 1.0, 2.0}) {
      const Complex r = q_to_1_limit(n, b, SpaceSpec::R());
      const Complex p = q_to_1_limit(n, b, SpaceSpec::projective());
      const Complex r_avg = 0.5 * (z_R_fast(n, 1 + h, b) + z_R_fast(n, 1 - h, b));
      worst = std::max(
          {worst, mixed(r, r_avg), mixed(p, z_proj_fast(n, 1 + h, b)), mixed(p, z_proj_fast(n, 1 - h, b))});
    }
  }
  std::ostringstream s;
  s << "worst difference " << worst;
  o.require(worst <= 1e-5, s.str());
  o.detail = s.str();
  return o;
}

Outcome monte_carlo() {
  Outcome o;
  struct Case {
    SpaceSpec space;
    std::vector<Rational> charges;
    int q;
  };
  const std::vector<Case> cases{{SpaceSpec::R(), {1, 1}, 2},
                                {SpaceSpec::R(), {1, 2, 3}, 2},
                                {SpaceSpec::projective(), {1, 1}, 3},
                                {SpaceSpec::projective(), {1, 1, 1}, 2}};
  McOptions options;
  options.samples = 1000000;
  options.depth = 32;
  options.seed = 12345;
  options.workers = default_workers();
  std::ostringstream s;
  for (const Case& c : cases) {
    const auto spec = ExponentSpec::from_charges(c.charges, Rational(1));
    const double exact = evaluate(c.space, spec, Field::exact(c.q)).exact().get_d();
    const McEstimate est = mc_estimate(c.space, spec, c.q, options);
    const double z = std::abs(est.mean - exact) / est.std_error;
    s << c.space.name() << "/" << c.charges.size() << "/" << c.q << ": " << z << "se  ";
    o.require(z <= 3.0, "outside 3 standard errors for " + c.space.name());
    o.require(est.enclosure && est.enclosure->first <= exact && exact <= est.enclosure->second,
              "enclosure misses exact value for " + c.space.name());
  }
  if (o.pass) o.detail = s.str();
  return o;
}

Outcome normalization() {
  Outcome o;
  for (int n = 1; n <= 6; ++n) {
    const auto zero = ExponentSpec::zero(n);
    for (long q : {2, 3, 5}) {
      const Field f = Field::exact(q);
      // P carries total measure q^{-1}; normalized it is a probability space.
      const ScalarValue p_normalized = z_P(zero, f) * ScalarValue(qpow(q, n));
      for (const ScalarValue& z : {z_R(zero, f), p_normalized, z_proj(zero, f), z_proj_cells(zero, f)}) {
        o.require(z.exact() == 1, "zero exponents at n=" + std::to_string(n));
      }
      // Float chain sums are exact up to rounding.
      const Field fl = Field::floating(static_cast<double>(q));
      o.require(rel(z_R(zero, fl).complex(), 1.0) <= 1e-14 && rel(z_proj(zero, fl).complex(), 1.0) <= 1e-14,
                "float zero exponents");
    }
    // Symbolic values are functions of y = q^beta; beta = 0 is y = 1.
    for (const ScalarValue& z : {z_R(zero, Field::symbolic()), z_proj(zero, Field::symbolic())}) {
      for (long q : {2, 3, 7}) o.require(z.symbolic().evaluate(mpq_class(q), mpq_class(1)) == 1, "symbolic at beta=0");
    }
  }
  for (int n = 2; n <= 5; ++n) {
    for (long q : {2, 3, 4}) {
      for (const auto& charges : {std::vector<Rational>(n, 1), ladder(n)}) {
        for (long b : {1, 2}) {
          const auto spec = ExponentSpec::from_charges(charges, Rational(b));
          for (const ScalarValue& z : {z_R(spec, Field::exact(q)), z_P(spec, Field::exact(q)), z_proj(spec, Field::exact(q))}) {
            o.require(z.exact() > 0 && z.exact() <= 1, "bound at n=" + std::to_string(n));
          }
        }
        const auto half = ExponentSpec::from_charges(charges, Rational(1, 2));
        const Field f = Field::floating(static_cast<double>(q));
        for (const ScalarValue& z : {z_R(half, f), z_P(half, f), z_proj(half, f)}) {
          o.require(z.complex().real() > 0 && z.complex().real() <= 1, "bound at beta=1/2");
        }
      }
    }
  }
  return o;
}

Outcome removable_singularity() {
  Outcome o;
  for (const auto& charges : {std::vector<Rational>(3, 1), ladder(3)}) {
    for (long b : {1, 2}) {
      const auto spec = ExponentSpec::from_charges(charges, Rational(b));
      const ScalarValue chains = z_proj(spec, Field::exact(2));
      o.require(chains == z_proj_cells(spec, Field::exact(2)), "chain sum differs from cells");
      const double flt = z_proj(spec, Field::floating(2.0)).complex().real();
      o.require(std::isfinite(flt) && rel(flt, chains.exact().get_d()) <= 1e-14, "float evaluation at q=2");
    }
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0 for no limit
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "three-charge closed form", 1.0, three_charges},
      {2, "reduced chain counts", 10.0, chain_counts},
      {3, "oracle equivalence grid", 60.0, oracle_grid},
      {4, "recurrence against chain sums", 0.0, recurrence_grid},
      {5, "power laws coefficientwise", 0.0, power_laws},
      {6, "q -> 1/q functional equations", 0.0, functional_equations},
      {7, "q -> 1 limits", 0.0, q_to_one},
      {8, "Monte Carlo agreement", 120.0, monte_carlo},
      {9, "normalization and bounds", 0.0, normalization},
      {10, "removable singularity at q = 2", 0.0, removable_singularity},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds > c.limit_seconds) {
      outcome.pass = false;
      outcome.detail = "over the " + std::to_string(c.limit_seconds) + " s limit";
    }
    failures += !outcome.pass;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " ("
              << std::to_string(seconds).substr(0, 6) << " s)";
    if (!outcome.detail.empty()) std::cout << "  " << outcome.detail;
    std::cout << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
