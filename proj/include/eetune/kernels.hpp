// Copyright 2026 The eetune Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// OpenMP versions of the data-parallel passes. The serial implementations
// in heuristic_init / harness remain the reference; these must produce
// identical output for any thread count.

#include <span>
#include <vector>

#include "eetune/harness.hpp"
#include "eetune/heuristic_init.hpp"

namespace eetune::par {

std::vector<DatasetPartition> partition_files(std::span<const FileSpec> files,
                                              std::span<const Bytes> bands = kDefaultBands);

DatasetPartition split_large_files(const DatasetPartition& partition, Bytes bdp);

/// Runs independent scenarios, one worker per scenario. Results keep the
/// input order.
std::vector<RunResult> run_batch(std::span<const Scenario> scenarios);

/// Serial reference for run_batch.
std::vector<RunResult> run_batch_serial(std::span<const Scenario> scenarios);

int max_threads() noexcept;

}  // namespace eetune::par
