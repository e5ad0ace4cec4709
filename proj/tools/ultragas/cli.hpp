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

#ifndef ULTRAGAS_TOOLS_CLI_HPP
#define ULTRAGAS_TOOLS_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "ultragas/sampler.hpp"

namespace ultragas::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitVerifyFailed = 2;

enum class Format { text, json, csv };

struct RunConfig {
  std::string subcommand;
  std::string space = "R";
  int n = 0;
  std::optional<std::string> q;
  std::optional<std::string> charges;
  std::optional<std::string> beta;
  std::optional<std::string> s_file;
  std::string mode = "exact";
  std::string method = "chains";
  int precision = 53;
  std::uint64_t seed = 0;
  int depth = kDefaultDepth;
  long long samples = kDefaultSamples;
  Format format = Format::text;
  std::optional<std::string> out;
  std::optional<int> workers;
  // chains
  bool count_only = false;
  int max_order = kDefaultMaxOrder;
  // recurrence / verify
  int n_max = 0;
  std::string law = "all";
  bool limit_q1 = false;
  bool extended = false;
  // thermo sweep: `steps` points from beta to beta_max
  std::optional<std::string> beta_max;
  int steps = 1;
};

/// Runs one subcommand and writes its document to `out` (or config.out).
/// Returns 0 on success, 1 on a validation or domain error (one-line
/// diagnostic on `err`), and 2 when a verification fails.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it; usage errors exit with 1.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ultragas::cli

#endif  // ULTRAGAS_TOOLS_CLI_HPP
