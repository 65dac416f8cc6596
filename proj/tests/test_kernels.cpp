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

#include <random>

#include "eetune/kernels.hpp"

using namespace eetune;

namespace {

std::vector<FileSpec> random_files(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::lognormal_distribution<double> size(14.0, 2.5);
    std::vector<FileSpec> v;
    for (std::size_t i = 0; i < n; ++i) {
        v.emplace_back(static_cast<Bytes>(std::max(1.0, size(rng))), i);
    }
    return v;
}

bool same(const DatasetPartition& a, const DatasetPartition& b) {
    if (a.file_count() != b.file_count() || a.label() != b.label()) return false;
    for (std::size_t i = 0; i < a.file_count(); ++i) {
        if (a.files()[i].size != b.files()[i].size || a.files()[i].id != b.files()[i].id) {
            return false;
        }
    }
    return a.total_bytes() == b.total_bytes() && a.pp_level() == b.pp_level();
}

}  // namespace

TEST_CASE("parallel partitioning matches the serial reference") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        auto files = random_files(50'000, seed);
        auto s = partition_files(files);
        auto p = par::partition_files(files);
        REQUIRE(s.size() == p.size());
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(same(s[i], p[i]));
    }
}

TEST_CASE("parallel splitting matches the serial reference") {
    auto files = random_files(20'000, 5);
    DatasetPartition part(files);
    part.set_pp_level(3);
    for (Bytes bdp : {Bytes{40'000'000}, Bytes{4'500'000}, Bytes{400'000}}) {
        CHECK(same(split_large_files(part, bdp), par::split_large_files(part, bdp)));
    }
    CHECK_THROWS_AS(par::split_large_files(part, 0), ValidationError);
    CHECK_THROWS_AS(par::partition_files(std::vector<FileSpec>{}), ValidationError);
}

TEST_CASE("parallel batch matches serial batch") {
    std::vector<Scenario> batch;
    for (int i = 0; i < 4; ++i) {
        Scenario s;
        s.id = "b" + std::to_string(i);
        s.datasets = {DatasetSpec{"", std::vector<Bytes>(30, 10'000'000 + i)}};
        s.seed = 10 + i;
        s.noise_stddev = 0.03;
        batch.push_back(s);
    }
    auto a = par::run_batch(batch);
    auto b = par::run_batch_serial(batch);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].summary.scenario_id == batch[i].id);
        CHECK(a[i].summary.total_energy_j == b[i].summary.total_energy_j);
        CHECK(a[i].trace.size() == b[i].trace.size());
    }
    batch[2].datasets.clear();
    CHECK_THROWS_AS(par::run_batch(batch), ValidationError);
}
