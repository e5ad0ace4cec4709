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

#ifndef ULTRAGAS_WORKERS_HPP
#define ULTRAGAS_WORKERS_HPP

#include <cstddef>
#include <functional>

namespace ultragas {

/// ULTRAGAS_WORKERS when set to a positive integer, otherwise the hardware
/// concurrency (at least 1). Throws std::invalid_argument on a malformed
/// environment value.
int default_workers();

/// Calls task(i) for every i in [0, count) on up to `workers` threads. Tasks
/// must be independent; the first exception thrown is rethrown.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& task);

}  // namespace ultragas

#endif  // ULTRAGAS_WORKERS_HPP
