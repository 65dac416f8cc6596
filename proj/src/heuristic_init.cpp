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

#include "eetune/heuristic_init.hpp"

#include <algorithm>
#include <cmath>

namespace eetune {

namespace {

void check_bands(std::span<const Bytes> bands) {
    for (std::size_t i = 1; i < bands.size(); ++i) {
        if (bands[i] <= bands[i - 1]) {
            throw ValidationError("partition_bands", "thresholds must be strictly increasing");
        }
    }
}

// ceil(a * n / d) without overflow or rounding error.
int ceil_share(Bytes a, int n, Bytes d) {
    using u128 = unsigned __int128;
    const u128 num = static_cast<u128>(a) * static_cast<u128>(n);
    return static_cast<int>((num + d - 1) / d);
}

template <typename SizeOf>
void allocate_by(std::vector<DatasetPartition>& partitions, int num_channels, SizeOf size_of) {
    Bytes sum = 0;
    for (const auto& p : partitions) sum += size_of(p);
    for (auto& p : partitions) {
        const Bytes s = size_of(p);
        if (s == 0 || p.complete()) {
            p.set_weight(0.0);
            p.set_cc_level(0);
            continue;
        }
        p.set_weight(static_cast<double>(s) / static_cast<double>(sum));
        p.set_cc_level(ceil_share(s, num_channels, sum));
    }
}

}  // namespace

std::size_t band_of(Bytes size, std::span<const Bytes> bands) noexcept {
    return static_cast<std::size_t>(std::upper_bound(bands.begin(), bands.end(), size) -
                                    bands.begin());
}

std::string band_label(std::size_t band, std::size_t band_count) {
    if (band_count == 3) {
        static const char* names[] = {"small", "medium", "large"};
        return names[band];
    }
    return "band" + std::to_string(band);
}

std::vector<DatasetPartition> partition_files(std::span<const FileSpec> files,
                                              std::span<const Bytes> bands) {
    if (files.empty()) throw ValidationError("files", "file list must not be empty");
    check_bands(bands);

    std::vector<std::vector<FileSpec>> buckets(bands.size() + 1);
    for (const auto& f : files) buckets[band_of(f.size, bands)].push_back(f);

    std::vector<DatasetPartition> out;
    for (std::size_t b = 0; b < buckets.size(); ++b) {
        if (buckets[b].empty()) continue;
        out.emplace_back(std::move(buckets[b]), band_label(b, buckets.size()));
    }
    return out;
}

DatasetPartition split_large_files(const DatasetPartition& partition, Bytes bdp) {
    if (bdp == 0) throw ValidationError("bdp", "must be > 0");
    if (!(partition.avg_file_size() > static_cast<double>(bdp))) return partition;

    std::vector<FileSpec> chunks;
    for (const auto& f : partition.files()) {
        Bytes left = f.size;
        while (left > 0) {
            const Bytes c = std::min(left, bdp);
            chunks.emplace_back(c, f.id);
            left -= c;
        }
    }
    DatasetPartition out(std::move(chunks), partition.label());
    out.set_pp_level(partition.pp_level());
    return out;
}

int pipelining_level(const DatasetPartition& partition, double bdp) {
    const long long pp = ceil_ratio(bdp, partition.avg_file_size());
    return static_cast<int>(std::max(1LL, pp));
}

int clamp_channels(long long n, const NetworkProfile& net) noexcept {
    return static_cast<int>(std::clamp<long long>(n, 1, net.max_channels()));
}

int initial_channel_count(const NetworkProfile& net) {
    return clamp_channels(ceil_ratio(net.bandwidth(), net.channel_throughput()), net);
}

bool allocate_channels(std::vector<DatasetPartition>& partitions, int num_channels) {
    if (num_channels < 1) throw ValidationError("num_channels", "must be >= 1");
    const bool any_active = std::any_of(partitions.begin(), partitions.end(),
                                        [](const DatasetPartition& p) { return !p.complete(); });
    if (!any_active) {
        for (auto& p : partitions) {
            p.set_weight(0.0);
            p.set_cc_level(0);
        }
        return false;
    }
    allocate_by(partitions, num_channels,
                [](const DatasetPartition& p) { return p.remaining_bytes(); });
    return true;
}

void allocate_channels_by_size(std::vector<DatasetPartition>& partitions, int num_channels) {
    if (num_channels < 1) throw ValidationError("num_channels", "must be >= 1");
    allocate_by(partitions, num_channels, [](const DatasetPartition& p) {
        return p.complete() ? Bytes{0} : p.total_bytes();
    });
}

CpuConfig init_cpu(const SlaPolicy& sla, const CpuLimits& limits) {
    const int cores = sla.energy_driven() ? 1 : limits.num_cores();
    return CpuConfig::at_min_freq(limits, cores);
}

TransferPlan initialize_plan(std::span<const FileSpec> files, const NetworkProfile& net,
                             const SlaPolicy& sla, const CpuLimits& limits,
                             std::span<const Bytes> bands) {
    sla.validate();
    auto partitions = partition_files(files, bands);
    const double bdp = net.bdp();
    const auto bdp_bytes = static_cast<Bytes>(std::llround(bdp));
    for (auto& p : partitions) {
        p = split_large_files(p, std::max<Bytes>(1, bdp_bytes));
        p.set_pp_level(pipelining_level(p, bdp));
    }
    const int channels = initial_channel_count(net);
    allocate_channels_by_size(partitions, channels);
    return TransferPlan{std::move(partitions), channels, init_cpu(sla, limits)};
}

bool slow_start_step(TransferPlan& plan, const Measurement& m, const NetworkProfile& net) {
    if (!(m.avg_tput > 0.0)) return false;
    const double scaled = plan.num_channels * net.bandwidth() / m.avg_tput;
    plan.num_channels = clamp_channels(static_cast<long long>(std::floor(scaled + 0.5)), net);
    allocate_channels(plan.partitions, plan.num_channels);
    return true;
}

}  // namespace eetune
