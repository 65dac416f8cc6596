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

#include <vector>

#include "eetune/core_model.hpp"
#include "eetune/heuristic_init.hpp"

namespace eetune::testing {

inline CpuLimits cloudlab_cpu() { return CpuLimits::with_levels(8, 1.2e9, 2.4e9, 5); }

inline NetworkProfile cloudlab_net(double window = 1e6, int max_ch = 32) {
    return {1e9, 0.036, window, max_ch};
}

/// One partition holding a single file of `bytes`, `channels` allocated.
inline TransferPlan single_plan(int channels, Bytes bytes = 1'000'000'000) {
    std::vector<DatasetPartition> parts;
    parts.emplace_back(std::vector<FileSpec>{FileSpec(bytes, 0)});
    TransferPlan plan{std::move(parts), channels, CpuConfig::at_min_freq(cloudlab_cpu(), 1)};
    allocate_channels(plan.partitions, channels);
    return plan;
}

/// Measurement of `bps` over one second at `watts`.
inline Measurement one_second(double bps, double watts = 10.0, double load = 0.5) {
    return Measurement::from(1.0, static_cast<Bytes>(bps / 8.0), watts, load);
}

}  // namespace eetune::testing
