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


#include <doctest.h>

#include "eetune/load_control.hpp"

using namespace eetune;

namespace {
const CpuLimits kLim = CpuLimits::with_levels(8, 1.2e9, 2.4e9, 5);
}

TEST_CASE("high load adds a core before touching frequency") {
    auto next = load_control_step(CpuConfig(kLim, 2, 1), 0.95);
    CHECK(next.active_cores() == 3);
    CHECK(next.freq_level() == 1);

    next = load_control_step(CpuConfig(kLim, 8, 1), 0.95);
    CHECK(next.active_cores() == 8);
    CHECK(next.freq_level() == 2);

    auto top = CpuConfig::at_max(kLim);
    CHECK(load_control_step(top, 1.0) == top);
}

TEST_CASE("low load lowers frequency before parking a core") {
    auto next = load_control_step(CpuConfig(kLim, 3, 0), 0.2);
    CHECK(next.active_cores() == 2);
    CHECK(next.freq_level() == 0);

    next = load_control_step(CpuConfig(kLim, 3, 2), 0.2);
    CHECK(next.active_cores() == 3);
    CHECK(next.freq_level() == 1);

    auto floor = CpuConfig(kLim, 1, 0);
    CHECK(load_control_step(floor, 0.0) == floor);
}

TEST_CASE("band and threshold edges hold still") {
    CpuConfig c(kLim, 4, 2);
    CHECK(load_control_step(c, 0.6) == c);
    CHECK(load_control_step(c, 0.85) == c);
    CHECK(load_control_step(c, 0.40) == c);
}

TEST_CASE("invalid inputs") {
    CpuConfig c(kLim, 4, 2);
    CHECK_THROWS_AS(load_control_step(c, 1.2), ValidationError);
    CHECK_THROWS_AS(load_control_step(c, -0.1), ValidationError);
    CHECK_THROWS_AS(load_control_step(c, 0.5, LoadThresholds{0.9, 0.5}), ValidationError);
}
