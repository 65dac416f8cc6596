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


// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS set to
// compare thread counts; on a single core the parallel versions only show
// their overhead.

#include <benchmark/benchmark.h>

#include <random>

#include "eetune/kernels.hpp"

namespace {

using namespace eetune;

std::vector<FileSpec> population(std::size_t n) {
    std::mt19937_64 rng(42);
    std::lognormal_distribution<double> size(14.0, 2.5);
    std::vector<FileSpec> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        v.emplace_back(static_cast<Bytes>(std::max(1.0, size(rng))), i);
    }
    return v;
}

void BM_PartitionSerial(benchmark::State& st) {
    const auto files = population(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(partition_files(files));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_PartitionParallel(benchmark::State& st) {
    const auto files = population(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(par::partition_files(files));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_SplitSerial(benchmark::State& st) {
    const DatasetPartition part(population(static_cast<std::size_t>(st.range(0))));
    for (auto _ : st) benchmark::DoNotOptimize(split_large_files(part, 4'500'000));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_SplitParallel(benchmark::State& st) {
    const DatasetPartition part(population(static_cast<std::size_t>(st.range(0))));
    for (auto _ : st) benchmark::DoNotOptimize(par::split_large_files(part, 4'500'000));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

std::vector<Scenario> batch() {
    std::vector<Scenario> v;
    for (int i = 0; i < 8; ++i) {
        auto s = make_preset_scenario("cloudlab", {"medium"}, SlaPolicy::max_throughput(), i + 1);
        s.id = "bench" + std::to_string(i);
        s.noise_stddev = 0.02;
        v.push_back(s);
    }
    return v;
}

void BM_BatchSerial(benchmark::State& st) {
    const auto b = batch();
    for (auto _ : st) benchmark::DoNotOptimize(par::run_batch_serial(b));
}

void BM_BatchParallel(benchmark::State& st) {
    const auto b = batch();
    for (auto _ : st) benchmark::DoNotOptimize(par::run_batch(b));
}

}  // namespace

BENCHMARK(BM_PartitionSerial)->Arg(20'000)->Arg(1'000'000);
BENCHMARK(BM_PartitionParallel)->Arg(20'000)->Arg(1'000'000);
BENCHMARK(BM_SplitSerial)->Arg(20'000)->Arg(1'000'000);
BENCHMARK(BM_SplitParallel)->Arg(20'000)->Arg(1'000'000);
BENCHMARK(BM_BatchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
