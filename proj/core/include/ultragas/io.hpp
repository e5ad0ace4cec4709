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

#ifndef ULTRAGAS_IO_HPP
#define ULTRAGAS_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ultragas/chains.hpp"
#include "ultragas/exponents.hpp"
#include "ultragas/scalar.hpp"

namespace ultragas {

using Json = nlohmann::ordered_json;

/// Exact value of "p/q", an integer, or a decimal with optional exponent
/// ("0.25", "-1.5e-3"). Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

/// Comma-separated rationals ("1,2,3/2").
std::vector<Rational> parse_rational_list(std::string_view text);

/// {"n": N, "s": {"i,j": value, ...}} with every pair present, or
/// {"n": N, "charges": [...], "beta": value}. Values are rational strings,
/// JSON numbers (decimals taken at face value), or [re, im] pairs; any
/// complex value makes the whole spec complex.
ExponentSpec spec_from_json(const Json& doc);
ExponentSpec read_spec_file(const std::filesystem::path& path);

/// "p/q" strings for rationals, numbers (or [re, im] when the imaginary part
/// is nonzero) for floats, and {"num": [[coeff, deg_q, deg_y], ...],
/// "den": [...]} with coefficient strings for rational functions.
Json to_json(const ScalarValue& value);

/// {"branches": [{"members": [...], "degree": d}, ...]} in sorted order.
Json to_json(const ReducedChain& chain);

}  // namespace ultragas

#endif  // ULTRAGAS_IO_HPP
