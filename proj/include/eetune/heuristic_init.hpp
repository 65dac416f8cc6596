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

// Initial parameter selection and the slow-start correction that follows it.
//
// The initial plan is built in four passes:
//   1. files are bucketed into partitions by size band;
//   2. partitions whose average file is larger than the BDP are split into
//      BDP-sized chunks, and each partition gets a pipelining depth that
//      fills one BDP with back-to-back requests;
//   3. the channel budget is the number of window-per-RTT channels needed
//      to fill the link;
//   4. channels are spread over partitions by weight, and the CPU starts at
//      its lowest frequency with one core (energy SLA) or all cores.

#include <span>
#include <vector>

#include "eetune/core_model.hpp"

namespace eetune {

/// Default size-band thresholds: small < 1 MB <= medium < 50 MB <= large.
inline const std::vector<Bytes> kDefaultBands{1'000'000, 50'000'000};

/// Band index of a file: number of thresholds <= size.
std::size_t band_of(Bytes size, std::span<const Bytes> bands) noexcept;

std::string band_label(std::size_t band, std::size_t band_count);

/// Buckets files by size band. Empty bands are dropped; the partition order
/// follows band order. Throws ValidationError on empty input or unsorted
/// bands.
std::vector<DatasetPartition> partition_files(std::span<const FileSpec> files,
                                              std::span<const Bytes> bands = kDefaultBands);

/// Replaces every file with ceil(size / bdp) chunks of at most `bdp` bytes,
/// but only when the partition's average file size exceeds `bdp`.
DatasetPartition split_large_files(const DatasetPartition& partition, Bytes bdp);

/// ceil(bdp / avg_file_size), at least 1.
int pipelining_level(const DatasetPartition& partition, double bdp);

/// ceil(bandwidth / (window * 8 / rtt)), clamped to [1, max_channels].
int initial_channel_count(const NetworkProfile& net);

/// Recomputes weights from remaining bytes and gives every active partition
/// ceil(weight * num_channels) channels. Completed partitions get weight 0
/// and no channels. Returns false when every partition is complete.
bool allocate_channels(std::vector<DatasetPartition>& partitions, int num_channels);

/// Same as allocate_channels but weights by total bytes; used only when
/// the plan is first built.
void allocate_channels_by_size(std::vector<DatasetPartition>& partitions, int num_channels);

CpuConfig init_cpu(const SlaPolicy& sla, const CpuLimits& limits);

/// Full initial plan: partition, split, pipelining, channel budget,
/// allocation and CPU.
TransferPlan initialize_plan(std::span<const FileSpec> files, const NetworkProfile& net,
                             const SlaPolicy& sla, const CpuLimits& limits,
                             std::span<const Bytes> bands = kDefaultBands);

/// Rescales the channel count by bandwidth / measured throughput.
/// Returns false (and leaves the plan alone) when nothing was measured.
bool slow_start_step(TransferPlan& plan, const Measurement& m, const NetworkProfile& net);

/// Clamps a channel count to [1, max_channels].
int clamp_channels(long long n, const NetworkProfile& net) noexcept;

}  // namespace eetune
