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

#include "ultragas/sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "ultragas/workers.hpp"

namespace ultragas {

Distance dist(const DigitPoint& x, const DigitPoint& y) {
  if (x.depth() != y.depth()) throw std::invalid_argument("digit depth mismatch");
  for (int v = 0; v < x.depth(); ++v) {
    if (x.digits[v] != y.digits[v]) return {v, false};
  }
  return {x.depth(), true};
}

Distance sphere_dist(const SpherePoint& a, const SpherePoint& b) {
  if (a.inner.depth() != b.inner.depth()) throw std::invalid_argument("digit depth mismatch");
  if (a.ball != b.ball) return {0, false};
  Distance d = dist(a.inner, b.inner);
  d.level += 1;
  return d;
}

DigitPoint random_digits(std::mt19937_64& rng, int q, int depth) {
  std::uniform_int_distribution<std::uint32_t> digit(0, static_cast<std::uint32_t>(q - 1));
  DigitPoint p;
  p.digits.resize(depth);
  for (auto& d : p.digits) d = digit(rng);
  return p;
}

SpherePoint random_sphere_point(std::mt19937_64& rng, int q, int depth) {
  std::uniform_int_distribution<int> ball(0, q);
  SpherePoint p;
  p.ball = ball(rng);
  p.inner = random_digits(rng, q, depth);
  return p;
}

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

namespace {

constexpr long long kChunk = 8192;

struct Welford {
  long long n = 0;
  double mean = 0;
  double m2 = 0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  void merge(const Welford& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(n + o.n);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.n) / total;
    m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
  }

  double std_error() const {
    if (n < 2) return 0.0;
    return std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
  }
};

struct ChunkResult {
  Welford lower, upper;
  long long collisions = 0;
};

}  // namespace

McEstimate mc_estimate(const SpaceSpec& space, const ExponentSpec& spec, int q, const McOptions& options) {
  if (options.samples <= 0) throw std::invalid_argument("samples must be positive");
  if (options.depth <= 0) throw std::invalid_argument("depth must be positive");
  if (q < 2) throw std::invalid_argument("sampling requires an integer q >= 2");
  const int n = spec.order();
  const bool projective = space.kind == SpaceSpec::Kind::projective;
  const int v = projective ? 0 : space.v;
  if (v < 0) throw std::invalid_argument("ball index must be non-negative");

  std::vector<double> s;
  bool negative = false, all_zero = true;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const Complex z = spec.numeric(i, j);
      if (z.imag() != 0.0) throw std::invalid_argument("sampling requires real exponents");
      s.push_back(z.real());
      negative |= z.real() < 0.0;
      all_zero &= z.real() == 0.0;
    }
  }
  const double log_q = std::log(static_cast<double>(q));
  // Haar measure of pi^v R is q^{-v}; sample uniformly and rescale.
  const double scale = projective ? 1.0 : std::pow(static_cast<double>(q), -v * n);

  const std::size_t chunks = static_cast<std::size_t>((options.samples + kChunk - 1) / kChunk);
  std::vector<ChunkResult> results(chunks);
  parallel_for(chunks, options.workers, [&](std::size_t c) {
    std::mt19937_64 rng = stream_rng(options.seed, c);
    const long long begin = static_cast<long long>(c) * kChunk;
    const long long count = std::min(kChunk, options.samples - begin);
    ChunkResult& out = results[c];
    std::vector<DigitPoint> digits(n);
    std::vector<SpherePoint> sphere(n);
    for (long long k = 0; k < count; ++k) {
      for (int i = 0; i < n; ++i) {
        if (projective) {
          sphere[i] = random_sphere_point(rng, q, options.depth);
        } else {
          digits[i] = random_digits(rng, q, options.depth);
        }
      }
      double exponent = 0.0;  // sum of s_ij * level_ij
      bool lower_zero = false;
      std::size_t pair = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++pair) {
          Distance d = projective ? sphere_dist(sphere[i], sphere[j]) : dist(digits[i], digits[j]);
          if (!projective) d.level += v;
          if (d.collision) {
            ++out.collisions;
            if (s[pair] > 0.0) lower_zero = true;
          }
          exponent += s[pair] * d.level;
        }
      }
      const double value = all_zero ? 1.0 : std::exp(-exponent * log_q);
      out.upper.add(value * scale);
      out.lower.add(lower_zero ? 0.0 : value * scale);
    }
  });

  ChunkResult total;
  for (const ChunkResult& r : results) {
    total.lower.merge(r.lower);
    total.upper.merge(r.upper);
    total.collisions += r.collisions;
  }
  McEstimate est;
  est.mean = total.upper.mean;
  est.std_error = total.upper.std_error();
  est.samples = total.upper.n;
  est.collisions = total.collisions;
  est.biased = negative;
  if (!negative) {
    est.enclosure = std::make_pair(total.lower.mean - 3.0 * total.lower.std_error(),
                                   total.upper.mean + 3.0 * total.upper.std_error());
  }
  return est;
}

}  // namespace ultragas
