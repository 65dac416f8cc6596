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

#include "eetune/kernels.hpp"

#include <algorithm>
#include <exception>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eetune::par {

int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

std::vector<DatasetPartition> partition_files(std::span<const FileSpec> files,
                                              std::span<const Bytes> bands) {
    if (files.empty()) throw ValidationError("files", "file list must not be empty");
    for (std::size_t i = 1; i < bands.size(); ++i) {
        if (bands[i] <= bands[i - 1]) {
            throw ValidationError("partition_bands", "thresholds must be strictly increasing");
        }
    }

    const auto n = static_cast<long>(files.size());
    std::vector<std::size_t> band(files.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) band[i] = band_of(files[i].size, bands);

    // Stable gather keeps input order inside each band.
    const std::size_t nb = bands.size() + 1;
    std::vector<std::vector<FileSpec>> buckets(nb);
#pragma omp parallel for schedule(static, 1)
    for (long b = 0; b < static_cast<long>(nb); ++b) {
        for (std::size_t i = 0; i < files.size(); ++i) {
            if (band[i] == static_cast<std::size_t>(b)) buckets[b].push_back(files[i]);
        }
    }

    std::vector<DatasetPartition> out;
    for (std::size_t b = 0; b < nb; ++b) {
        if (!buckets[b].empty()) out.emplace_back(std::move(buckets[b]), band_label(b, nb));
    }
    return out;
}

DatasetPartition split_large_files(const DatasetPartition& partition, Bytes bdp) {
    if (bdp == 0) throw ValidationError("bdp", "must be > 0");
    if (!(partition.avg_file_size() > static_cast<double>(bdp))) return partition;

    const auto& files = partition.files();
    const auto n = static_cast<long>(files.size());
    std::vector<std::size_t> offset(files.size() + 1, 0);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) offset[i + 1] = (files[i].size + bdp - 1) / bdp;
    std::inclusive_scan(offset.begin(), offset.end(), offset.begin());

    std::vector<FileSpec> chunks(offset.back(), FileSpec(1, 0));
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        Bytes left = files[i].size;
        for (std::size_t k = offset[i]; k < offset[i + 1]; ++k) {
            const Bytes c = std::min(left, bdp);
            chunks[k] = FileSpec(c, files[i].id);
            left -= c;
        }
    }
    DatasetPartition out(std::move(chunks), partition.label());
    out.set_pp_level(partition.pp_level());
    return out;
}

std::vector<RunResult> run_batch(std::span<const Scenario> scenarios) {
    std::vector<RunResult> out(scenarios.size());
    std::vector<std::exception_ptr> errors(scenarios.size());
    const auto n = static_cast<long>(scenarios.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
        try {
            out[i] = run_scenario(scenarios[i]);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

std::vector<RunResult> run_batch_serial(std::span<const Scenario> scenarios) {
    std::vector<RunResult> out;
    out.reserve(scenarios.size());
    for (const auto& s : scenarios) out.push_back(run_scenario(s));
    return out;
}

}  // namespace eetune::par
