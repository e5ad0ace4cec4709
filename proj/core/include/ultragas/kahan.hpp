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

#ifndef ULTRAGAS_KAHAN_HPP
#define ULTRAGAS_KAHAN_HPP

#include <cmath>
#include <complex>

namespace ultragas {

/// Neumaier-compensated running sum of doubles.
class CompensatedDouble {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

template <class T>
class CompensatedSum;

template <>
class CompensatedSum<double> : public CompensatedDouble {};

/// Componentwise compensated sum of complex doubles.
template <>
class CompensatedSum<std::complex<double>> {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedDouble re_;
  CompensatedDouble im_;
};

}  // namespace ultragas

#endif  // ULTRAGAS_KAHAN_HPP
