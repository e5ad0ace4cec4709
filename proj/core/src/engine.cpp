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

#include "ultragas/engine.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <unordered_map>

#include "ultragas/kahan.hpp"
#include "ultragas/partitions.hpp"

namespace ultragas {

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::exact: return "exact";
    case Mode::symbolic: return "symbolic";
    case Mode::floating: return "float";
  }
  return "unknown";
}

Field Field::exact(Rational q) {
  Field f;
  f.mode = Mode::exact;
  f.q = q.get_d();
  f.q_exact = std::move(q);
  return f;
}

Field Field::symbolic() {
  Field f;
  f.mode = Mode::symbolic;
  return f;
}

Field Field::floating(double q) {
  Field f;
  f.mode = Mode::floating;
  f.q = q;
  return f;
}

std::optional<long> Field::integer_q() const {
  switch (mode) {
    case Mode::exact:
      if (q_exact.get_den() == 1 && q_exact > 0 && q_exact.get_num().fits_slong_p()) {
        return q_exact.get_num().get_si();
      }
      return std::nullopt;
    case Mode::floating:
      if (q > 0 && q < 1e9 && std::floor(q) == q) return static_cast<long>(q);
      return std::nullopt;
    case Mode::symbolic:
      return std::nullopt;
  }
  return std::nullopt;
}

std::string SpaceSpec::name() const {
  if (kind == Kind::projective) return "proj";
  if (v == 0) return "R";
  if (v == 1) return "P";
  return "ball:" + std::to_string(v);
}

SpaceSpec SpaceSpec::parse(const std::string& text) {
  if (text == "R") return R();
  if (text == "P") return P();
  if (text == "proj") return projective();
  if (text.rfind("ball:", 0) == 0) {
    std::size_t used = 0;
    const std::string digits = text.substr(5);
    int v = 0;
    try {
      v = std::stoi(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == digits.size() && used > 0) return ball(v);
  }
  throw std::invalid_argument("unknown space '" + text + "' (expected R, P, ball:v or proj)");
}

namespace {

Rational rational_pow(const Rational& base, long e) {
  if (e < 0) {
    if (base == 0) throw DivergenceError("zero raised to a negative power");
    return rational_pow(Rational(1) / base, -e);
  }
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
  out.canonicalize();
  return out;
}

long to_long(const Rational& r) {
  if (r.get_den() != 1 || !r.get_num().fits_slong_p()) {
    throw std::invalid_argument("exponent " + r.get_str() + " is not a machine integer");
  }
  return r.get_num().get_si();
}

std::string pole_message(Mask lambda) {
  return "pole: q^e_lambda = 1 for lambda=" + IndexSet::from_mask(lambda).to_string();
}

// Each backend supplies the chain weights of one arithmetic kind:
//   branch_factor(lambda, deg) = (q-1)_{deg-1} / (q^{e_lambda} - 1)
//   proj_root_factor(root, d)  = (q^{N+sum s} + 1 - d) prod_{m=1}^{d-2} (q - m)
//                                / (q^{e_root} - 1)
// plus the prefactors q^{a + k * sum_{pairs in mask} s} and (q+1)^k.

class ExactBackend {
 public:
  using Term = Rational;

  ExactBackend(const ExponentSpec& spec, Rational q) : spec_(spec), q_(std::move(q)) {}

  Term one() const { return 1; }
  static void mul(Term& out, const Term& a, const Term& b) { out = a * b; }

  Term branch_factor(Mask lambda, int degree) const {
    const Rational denom = q_pow(e(lambda)) - 1;
    if (denom == 0) throw DivergenceError(pole_message(lambda));
    Rational num = 1;
    for (int m = 0; m < degree - 1; ++m) num *= q_ - 1 - m;
    return num / denom;
  }

  Term proj_root_factor(Mask root, int degree) const {
    const long er = e(root);
    const Rational denom = q_pow(er) - 1;
    if (denom == 0) throw DivergenceError(pole_message(root));
    Rational num = q_pow(er + 1) + 1 - degree;
    for (int m = 1; m <= degree - 2; ++m) num *= q_ - m;
    return num / denom;
  }

  // Pairwise summation: slot k holds the sum of 2^k consecutive terms, so
  // large denominators meet only near the top of the tree.
  class Accumulator {
   public:
    void add(const Term& t) {
      Rational carry = t;
      for (auto& slot : slots_) {
        if (!slot) {
          slot = std::move(carry);
          return;
        }
        carry += *slot;
        slot.reset();
      }
      slots_.emplace_back(std::move(carry));
    }
    ScalarValue finish() const {
      Rational sum = 0;
      for (const auto& slot : slots_) {
        if (slot) sum += *slot;
      }
      return sum;
    }

   private:
    std::vector<std::optional<Rational>> slots_;
  };

  ScalarValue q_pow_mixed(long base, Mask pairs, long multiplier) const {
    return rational_pow(q_, base + multiplier * to_long(spec_.pair_sum_exact(pairs)));
  }
  ScalarValue q_plus_one_pow(long k) const { return rational_pow(q_ + 1, k); }
  ScalarValue constant(long c) const { return Rational(c); }
  ScalarValue q_value() const { return q_; }

 private:
  long e(Mask lambda) const {
    return popcount(lambda) - 1 + to_long(spec_.pair_sum_exact(lambda));
  }
  const Rational& q_pow(long k) const {
    auto it = powers_.find(k);
    if (it == powers_.end()) it = powers_.emplace(k, rational_pow(q_, k)).first;
    return it->second;
  }

  const ExponentSpec& spec_;
  Rational q_;
  mutable std::map<long, Rational> powers_;
};

class FloatBackend {
 public:
  using Term = Complex;

  FloatBackend(const ExponentSpec& spec, double q) : spec_(spec), q_(q), log_q_(std::log(q)) {}

  Term one() const { return 1.0; }
  static void mul(Term& out, const Term& a, const Term& b) { out = a * b; }

  Term branch_factor(Mask lambda, int degree) const {
    const Complex denom = q_pow(e(lambda)) - 1.0;
    if (denom == Complex(0.0, 0.0)) throw DivergenceError(pole_message(lambda));
    double num = 1.0;
    for (int m = 0; m < degree - 1; ++m) num *= q_ - 1 - m;
    return num / denom;
  }

  Term proj_root_factor(Mask root, int degree) const {
    const Complex er = e(root);
    const Complex denom = q_pow(er) - 1.0;
    if (denom == Complex(0.0, 0.0)) throw DivergenceError(pole_message(root));
    Complex num = q_pow(er + 1.0) + 1.0 - static_cast<double>(degree);
    for (int m = 1; m <= degree - 2; ++m) num *= q_ - m;
    return num / denom;
  }

  class Accumulator {
   public:
    void add(const Term& t) { sum_.add(t); }
    ScalarValue finish() const { return sum_.value(); }

   private:
    CompensatedSum<Complex> sum_;
  };

  ScalarValue q_pow_mixed(long base, Mask pairs, long multiplier) const {
    return q_pow(static_cast<double>(base) +
                 static_cast<double>(multiplier) * spec_.pair_sum_numeric(pairs));
  }
  ScalarValue q_plus_one_pow(long k) const {
    return Complex(std::pow(q_ + 1.0, static_cast<double>(k)), 0.0);
  }
  ScalarValue constant(long c) const { return Complex(static_cast<double>(c), 0.0); }
  ScalarValue q_value() const { return Complex(q_, 0.0); }

 private:
  Complex e(Mask lambda) const {
    return static_cast<double>(popcount(lambda) - 1) + spec_.pair_sum_numeric(lambda);
  }
  Complex q_pow(Complex k) const { return std::exp(k * log_q_); }

  const ExponentSpec& spec_;
  double q_;
  double log_q_;
};

// Terms are a q-polynomial numerator over a product of binomials
// q^a y^b - 1; sums are grouped by their binomial multiset and only turned
// into BiRationals at the end.
class SymbolicBackend {
 public:
  struct Term {
    LaurentPoly num;
    std::vector<Monomial> binomials;  // sorted
  };

  explicit SymbolicBackend(const ExponentSpec& spec) : spec_(spec) {}

  Term one() const { return Term{LaurentPoly(mpz_class(1)), {}}; }
  static void mul(Term& out, const Term& a, const Term& b) {
    out.num = a.num * b.num;
    out.binomials.clear();
    std::merge(a.binomials.begin(), a.binomials.end(), b.binomials.begin(), b.binomials.end(),
               std::back_inserter(out.binomials));
  }

  Term branch_factor(Mask lambda, int degree) const {
    LaurentPoly num(mpz_class(1));
    for (int m = 0; m < degree - 1; ++m) num = num * q_minus(1 + m);
    return Term{std::move(num), {e(lambda)}};
  }

  Term proj_root_factor(Mask root, int degree) const {
    const Monomial er = e(root);
    LaurentPoly num = LaurentPoly::monomial(1, er.first + 1, er.second) +
                      LaurentPoly(mpz_class(1 - degree));
    for (int m = 1; m <= degree - 2; ++m) num = num * q_minus(m);
    return Term{std::move(num), {er}};
  }

  class Accumulator {
   public:
    void add(const Term& t) { groups_[t.binomials] += t.num; }
    ScalarValue finish() const {
      BiRational sum;
      for (const auto& [binomials, num] : groups_) {
        BiRational term(num);
        for (const auto& [a, b] : binomials) term *= BiRational::reciprocal_binomial(a, b);
        sum += term;
      }
      return sum;
    }

   private:
    std::map<std::vector<Monomial>, LaurentPoly> groups_;
  };

  ScalarValue q_pow_mixed(long base, Mask pairs, long multiplier) const {
    return BiRational::monomial(1, static_cast<int>(base),
                                static_cast<int>(multiplier * charge_sum(pairs)));
  }
  ScalarValue q_plus_one_pow(long k) const {
    BiRational out(mpz_class(1));
    const BiRational step = k < 0 ? BiRational::reciprocal_cyclotomic(2, 1, 0)
                                  : BiRational(LaurentPoly::cyclotomic(2, 1, 0));
    for (long i = 0; i < std::labs(k); ++i) out *= step;
    return out;
  }
  ScalarValue constant(long c) const { return BiRational(mpz_class(c)); }
  ScalarValue q_value() const { return BiRational::q(); }

 private:
  static LaurentPoly q_minus(long m) {
    return LaurentPoly::monomial(1, 1, 0) + LaurentPoly(mpz_class(-m));
  }
  long charge_sum(Mask lambda) const { return to_long(spec_.charge_pair_sum(lambda)); }
  Monomial e(Mask lambda) const {
    return {popcount(lambda) - 1, static_cast<int>(charge_sum(lambda))};
  }

  const ExponentSpec& spec_;
};

template <class Backend>
class FoldVisitor {
 public:
  using Term = typename Backend::Term;

  FoldVisitor(const Backend& backend, Mask root, bool projective)
      : backend_(backend), root_(root), projective_(projective) {
    stack_.push_back(backend.one());
  }

  void enter(Mask m, int degree) {
    const Term& factor = projective_ && m == root_ ? root_factor(degree) : branch_factor(m, degree);
    Term next;
    Backend::mul(next, stack_.back(), factor);
    stack_.push_back(std::move(next));
  }
  void leave() { stack_.pop_back(); }
  void chain() { sum_.add(stack_.back()); }

  ScalarValue result() const { return sum_.finish(); }

 private:
  const Term& branch_factor(Mask m, int degree) {
    const std::uint64_t key = (static_cast<std::uint64_t>(m) << 6) | static_cast<std::uint64_t>(degree);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, backend_.branch_factor(m, degree)).first;
    return it->second;
  }
  const Term& root_factor(int degree) {
    auto it = root_cache_.find(degree);
    if (it == root_cache_.end()) it = root_cache_.emplace(degree, backend_.proj_root_factor(root_, degree)).first;
    return it->second;
  }

  const Backend& backend_;
  Mask root_;
  bool projective_;
  std::vector<Term> stack_;
  std::unordered_map<std::uint64_t, Term> cache_;
  std::unordered_map<int, Term> root_cache_;
  typename Backend::Accumulator sum_;
};

template <class Backend>
ScalarValue chain_sum(const Backend& backend, Mask ground, bool projective, const ChainLimits& limits) {
  FoldVisitor<Backend> visitor(backend, ground, projective);
  walk_reduced_chains(ground, visitor, limits);
  return visitor.result();
}

void require_positive_q(const Field& field) {
  if (field.mode == Mode::exact && field.q_exact <= 0) {
    throw std::invalid_argument("q must be positive, got " + field.q_exact.get_str());
  }
  if (field.mode == Mode::floating && !(field.q > 0.0 && std::isfinite(field.q))) {
    throw std::invalid_argument("q must be positive and finite, got " + format_double(field.q));
  }
}

void require_symbolic_ready(const ExponentSpec& spec) {
  const auto& provenance = spec.charges();
  if (!provenance) {
    throw std::invalid_argument("symbolic mode requires integer exponents given as charge products");
  }
  const auto& c = provenance->charges;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if (Rational(c[i] * c[j]).get_den() != 1) {
        throw std::invalid_argument("symbolic mode requires integer exponents (charge product " +
                                    Rational(c[i] * c[j]).get_str() + ")");
      }
    }
  }
}

void require_domain(const ExponentSpec& spec, Mask within) {
  if (auto bad = domain_violation(spec, within)) {
    throw DivergenceError("divergent: " + describe_violation(*bad));
  }
}

// Exact evaluation needs integer exponents; anything else is evaluated in
// floating point after a warning.
Field effective_field(const ExponentSpec& spec, const Field& field, const EngineOptions& options) {
  require_positive_q(field);
  if (field.mode == Mode::exact && !spec.integral()) {
    if (options.warn) {
      options.warn("exact mode needs integer exponents and rational q; falling back to float");
    }
    return Field::floating(field.q_exact.get_d());
  }
  if (field.mode == Mode::symbolic) require_symbolic_ready(spec);
  return field;
}

template <class F>
ScalarValue with_backend(const ExponentSpec& spec, const Field& field, F&& f) {
  switch (field.mode) {
    case Mode::exact: return f(ExactBackend(spec, field.q_exact));
    case Mode::floating: return f(FloatBackend(spec, field.q));
    case Mode::symbolic: return f(SymbolicBackend(spec));
  }
  throw std::logic_error("unknown mode");
}

void require_labels(const IndexSet& I, const ExponentSpec& spec) {
  if (!I.is_subset_of(IndexSet::range(spec.order()))) {
    throw std::invalid_argument("index set " + I.to_string() + " not inside [" +
                                std::to_string(spec.order()) + "]");
  }
}

}  // namespace

ScalarValue z_ball(const IndexSet& I, int v, const ExponentSpec& spec, const Field& field,
                   const EngineOptions& options) {
  require_labels(I, spec);
  const Field eff = effective_field(spec, field, options);
  require_domain(spec, I.mask());
  return with_backend(spec, eff, [&](const auto& backend) -> ScalarValue {
    if (I.empty()) return backend.constant(1);
    // q^{-[(v-1)(e_I+1) + #I]} = q^{-v #I} * q^{(1-v) sum_{I} s}
    const long size = static_cast<long>(I.size());
    ScalarValue prefactor = backend.q_pow_mixed(-static_cast<long>(v) * size, I.mask(), 1 - v);
    return chain_sum(backend, I.mask(), false, options.limits) * prefactor;
  });
}

ScalarValue z_R(const ExponentSpec& spec, const Field& field, const EngineOptions& options) {
  return z_ball(IndexSet::range(spec.order()), 0, spec, field, options);
}

ScalarValue z_P(const ExponentSpec& spec, const Field& field, const EngineOptions& options) {
  return z_ball(IndexSet::range(spec.order()), 1, spec, field, options);
}

ScalarValue z_proj(const ExponentSpec& spec, const Field& field, const EngineOptions& options) {
  const Field eff = effective_field(spec, field, options);
  const Mask ground = full_mask(spec.order());
  require_domain(spec, ground);
  return with_backend(spec, eff, [&](const auto& backend) -> ScalarValue {
    if (spec.order() == 0) return backend.constant(1);
    return chain_sum(backend, ground, true, options.limits) *
           backend.q_plus_one_pow(-(spec.order() - 1));
  });
}

ScalarValue z_proj_cells(const ExponentSpec& spec, const Field& field, const EngineOptions& options) {
  if (field.mode == Mode::symbolic) {
    throw std::invalid_argument("cell decomposition requires integer q");
  }
  const Field eff = effective_field(spec, field, options);
  const auto q = eff.integer_q();
  if (!q || *q < 2) throw std::invalid_argument("cell decomposition requires integer q");
  const int n = spec.order();
  const Mask ground = full_mask(n);
  require_domain(spec, ground);

  return with_backend(spec, eff, [&](const auto& backend) -> ScalarValue {
    if (n == 0) return backend.constant(1);
    std::unordered_map<Mask, ScalarValue> ball_p;
    auto z_p = [&](Mask block) -> const ScalarValue& {
      auto it = ball_p.find(block);
      if (it == ball_p.end()) {
        const IndexSet members = IndexSet::from_mask(block);
        ScalarValue value =
            popcount(block) == 1
                ? backend.q_pow_mixed(-1, 0, 0)
                : chain_sum(backend, block, false, options.limits) *
                      backend.q_pow_mixed(-static_cast<long>(members.size()), block, 0);
        it = ball_p.emplace(block, std::move(value)).first;
      }
      return it->second;
    };

    // Ordered placements of d labeled blocks into q + 1 cells: (q+1)_d.
    std::vector<ScalarValue> placements{backend.constant(1)};
    for (int d = 1; d <= n; ++d) {
      placements.push_back(placements.back() * backend.constant(*q + 2 - d));
    }

    ScalarValue sum = backend.constant(0);
    for_each_set_partition(ground, 1, static_cast<int>(std::min<long>(*q + 1, n)),
                           [&](std::span<const Mask> blocks) {
                             ScalarValue term = placements[blocks.size()];
                             for (Mask b : blocks) term *= z_p(b);
                             sum += term;
                           });
    const ScalarValue ratio = backend.q_value() / (backend.q_value() + backend.constant(1));
    ScalarValue scale = backend.constant(1);
    for (int i = 0; i < n; ++i) scale *= ratio;
    return sum * scale;
  });
}

namespace {

class CosetOracle {
 public:
  CosetOracle(const ExponentSpec& spec, const Field& field, long q)
      : spec_(spec), field_(field), q_(q) {}

  // q^{-(#B + sum_B s)}: the weight of a block placed inside one coset of P.
  ScalarValue coset_weight(Mask block) const {
    if (field_.mode == Mode::exact) {
      return rational_pow(Rational(q_), -(popcount(block) + to_long(spec_.pair_sum_exact(block))));
    }
    const Complex e = static_cast<double>(popcount(block)) + spec_.pair_sum_numeric(block);
    return std::exp(-e * std::log(static_cast<double>(q_)));
  }

  ScalarValue z_r(Mask I) {
    if (popcount(I) <= 1) return one();
    auto key = memo_key(I);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    // Z_I(R) (1 - q^{-e_I}) = sum over unordered partitions with 2..q blocks
    // of (q)_d * prod_B q^{-(#B + sum_B s)} Z_B(R).
    ScalarValue sum = zero();
    std::vector<ScalarValue> placements{one()};
    const int n = popcount(I);
    for (int d = 1; d <= n; ++d) placements.push_back(placements.back() * constant(q_ + 1 - d));
    for_each_set_partition(I, 2, static_cast<int>(std::min<long>(q_, n)),
                           [&](std::span<const Mask> blocks) {
                             ScalarValue term = placements[blocks.size()];
                             for (Mask b : blocks) term *= coset_weight(b) * z_r(b);
                             sum += term;
                           });
    const ScalarValue resolvent = one() - coset_weight(I) * constant(q_);
    if (resolvent == zero()) {
      throw DivergenceError("divergent: resolvent 1 - q^{-e_I} vanishes for I=" +
                            IndexSet::from_mask(I).to_string());
    }
    ScalarValue value = sum / resolvent;
    memo_.emplace(std::move(key), value);
    return value;
  }

 private:
  ScalarValue one() const { return constant(1); }
  ScalarValue zero() const { return constant(0); }
  ScalarValue constant(long c) const {
    if (field_.mode == Mode::exact) return Rational(c);
    return Complex(static_cast<double>(c), 0.0);
  }

  // Sorted charges identify the sub-instance up to relabeling; without
  // charges the block itself is the key.
  std::vector<Rational> memo_key(Mask I) const {
    std::vector<Rational> key;
    if (spec_.charges()) {
      for (int label : IndexSet::from_mask(I)) key.push_back(spec_.charges()->charges[label - 1]);
      std::sort(key.begin(), key.end());
      key.insert(key.begin(), Rational(-1));
    } else {
      key.push_back(Rational(static_cast<long>(I)));
    }
    return key;
  }

  const ExponentSpec& spec_;
  const Field& field_;
  long q_;
  std::map<std::vector<Rational>, ScalarValue> memo_;
};

}  // namespace

ScalarValue z_coset_oracle(const IndexSet& I, const ExponentSpec& spec, const Field& field,
                           const SpaceSpec& space, const EngineOptions& options) {
  if (field.mode == Mode::symbolic) {
    throw std::invalid_argument("coset oracle supports exact and float modes only");
  }
  if (space.kind != SpaceSpec::Kind::ball || (space.v != 0 && space.v != 1)) {
    throw std::invalid_argument("coset oracle is defined on R and P only");
  }
  require_labels(I, spec);
  const Field eff = effective_field(spec, field, options);
  const auto q = eff.integer_q();
  if (!q || *q < 2) throw std::invalid_argument("coset oracle requires integer q >= 2");
  require_domain(spec, I.mask());
  CosetOracle oracle(spec, eff, *q);
  ScalarValue value = oracle.z_r(I.mask());
  if (space.v == 1) value *= oracle.coset_weight(I.mask());
  return value;
}

ScalarValue evaluate(const SpaceSpec& space, const ExponentSpec& spec, const Field& field,
                     const EngineOptions& options) {
  if (space.kind == SpaceSpec::Kind::projective) return z_proj(spec, field, options);
  return z_ball(IndexSet::range(spec.order()), space.v, spec, field, options);
}

Observables observables(const SpaceSpec& space, const std::vector<Rational>& charges, double beta,
                        double q, const EngineOptions& options) {
  Observables out;
  if (charges.size() <= 1) return out;
  auto log_z = [&](double b) {
    const ExponentSpec spec = ExponentSpec::from_charges(charges, Complex(b, 0.0));
    const Complex z = evaluate(space, spec, Field::floating(q), options).complex();
    if (!(z.real() > 0.0)) throw DivergenceError("partition function is not positive at beta=" + format_double(b));
    return std::log(z.real());
  };
  const double h = std::max(1e-5, 1e-5 * std::abs(beta));
  const double f0 = log_z(beta);
  const double fp = log_z(beta + h), fm = log_z(beta - h);
  const double fp2 = log_z(beta + h / 2), fm2 = log_z(beta - h / 2);
  const double d1_h = (fp - fm) / (2 * h);
  const double d1_h2 = (fp2 - fm2) / h;
  const double d2_h = (fp - 2 * f0 + fm) / (h * h);
  const double d2_h2 = (fp2 - 2 * f0 + fm2) / (h * h / 4);
  out.free_energy = -f0;
  out.mean_energy = -(4 * d1_h2 - d1_h) / 3;
  out.fluctuation = (4 * d2_h2 - d2_h) / 3;
  return out;
}

}  // namespace ultragas
