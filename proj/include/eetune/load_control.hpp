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

#include "eetune/core_model.hpp"

namespace eetune {

struct LoadThresholds {
    double min_load = 0.40;
    double max_load = 0.85;

    void validate() const;
};

/// One threshold-policy step on the client CPU. Above max_load it adds a
/// core, or failing that raises the frequency one P-state; below min_load it
/// lowers the frequency, or failing that parks a core. At most one actuator
/// moves per call and saturation is a no-op.
CpuConfig load_control_step(const CpuConfig& cpu, double cpu_load,
                            const LoadThresholds& thresholds = {});

}  // namespace eetune
