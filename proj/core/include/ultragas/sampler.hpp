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

#ifndef ULTRAGAS_SAMPLER_HPP
#define ULTRAGAS_SAMPLER_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ultragas/engine.hpp"

namespace ultragas {

/// Default truncation depth and sample count.
inline constexpr int kDefaultDepth = 32;
inline constexpr long long kDefaultSamples = 100000;

/// A point of R truncated to its first D digits.
struct DigitPoint {
  std::vector<std::uint32_t> digits;

  int depth() const { return static_cast<int>(digits.size()); }
};

/// A point of the projective line: one of the q + 1 balls and a point of P
/// inside it (inner digits start at level 1).
struct SpherePoint {
  int ball = 0;
  DigitPoint inner;
};

/// Distance q^{-level}, or a collision when the points agree to full depth.
struct Distance {
  int level = 0;
  bool collision = false;

  double value(double q) const { return std::pow(q, -level); }
};

/// First differing digit index v gives q^{-v}; equal strings collide (level
/// is then the depth). Throws std::invalid_argument on a depth mismatch.
Distance dist(const DigitPoint& x, const DigitPoint& y);

/// 1 across balls; inside one ball q^{-(1 + v)} with v from dist on the
/// inner strings, collisions propagated (level 1 + depth).
Distance sphere_dist(const SpherePoint& a, const SpherePoint& b);

/// Uniform digit strings and sphere points.
DigitPoint random_digits(std::mt19937_64& rng, int q, int depth);
SpherePoint random_sphere_point(std::mt19937_64& rng, int q, int depth);

/// Generator for reproducible stream `stream` of `seed`.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream);

struct McEstimate {
  double mean = 0;
  double std_error = 0;
  long long samples = 0;
  /// Number of point pairs agreeing to full depth.
  long long collisions = 0;
  /// [lower, upper]; set only when every exponent is non-negative.
  std::optional<std::pair<double, double>> enclosure;
  /// Set for negative exponents, where the plain estimator is unreliable.
  bool biased = false;
};

struct McOptions {
  long long samples = kDefaultSamples;
  int depth = kDefaultDepth;
  std::uint64_t seed = 0;
  int workers = 1;
};

/// Monte Carlo estimate of the partition function on R, P (any ball pi^v R)
/// or the projective line. Colliding pairs take distance q^{-D} (scaled with
/// the space) in the mean and in the upper bound and contribute 0 to the
/// lower bound; the enclosure is [lower - 3 se, upper + 3 se]. Samples are
/// split into fixed chunks, each drawn from its own stream and combined in
/// chunk order, so results do not depend on the worker count.
McEstimate mc_estimate(const SpaceSpec& space, const ExponentSpec& spec, int q, const McOptions& options);

}  // namespace ultragas

#endif  // ULTRAGAS_SAMPLER_HPP
