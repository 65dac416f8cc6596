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

#include "eetune/load_control.hpp"

namespace eetune {

void LoadThresholds::validate() const {
    if (!(min_load > 0.0 && min_load < max_load && max_load < 1.0)) {
        throw ValidationError("load_control", "thresholds must satisfy 0 < min_load < max_load < 1");
    }
}

CpuConfig load_control_step(const CpuConfig& cpu, double cpu_load,
                            const LoadThresholds& thresholds) {
    if (cpu_load < 0.0 || cpu_load > 1.0) {
        throw ValidationError("cpu_load", "must be in [0,1]");
    }
    thresholds.validate();
    if (cpu_load > thresholds.max_load) {
        if (cpu.can_add_core()) return cpu.with_cores(cpu.active_cores() + 1);
        if (cpu.can_raise_freq()) return cpu.with_level(cpu.freq_level() + 1);
    } else if (cpu_load < thresholds.min_load) {
        if (cpu.can_lower_freq()) return cpu.with_level(cpu.freq_level() - 1);
        if (cpu.can_remove_core()) return cpu.with_cores(cpu.active_cores() - 1);
    }
    return cpu;
}

}  // namespace eetune
