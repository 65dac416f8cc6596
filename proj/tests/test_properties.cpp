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

#include "support/properties.hpp"

using namespace eetune::checks;

TEST_CASE("randomized invariants hold") {
    for (const auto& r : all_properties(20261015, 1000)) {
        INFO(r.name << ": " << r.first_failure);
        CHECK(r.cases == 1000);
        CHECK(r.failures == 0);
    }
}
