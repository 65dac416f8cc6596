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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eetune/core_model.hpp"
#include "eetune/load_control.hpp"
#include "eetune/sim_env.hpp"

namespace eetune {

// ---------------------------------------------------------------- presets

struct TestbedPreset {
    std::string_view name;
    double bandwidth;             // bit/s
    double rtt;                   // s
    double table_bdp;             // bytes, nominal for the testbed
    double default_window;        // bytes
    int max_channels;
    int num_cores;
    double min_freq;              // Hz
    double max_freq;              // Hz
    int freq_levels;
    PowerParams power;

    NetworkProfile network() const;
    CpuLimits cpu_limits() const;
};

struct DatasetPreset {
    std::string_view name;
    std::size_t num_files;
    double total_bytes;
    double avg_file_bytes;
    double stddev_bytes;
};

std::span<const TestbedPreset> testbed_presets() noexcept;
std::span<const DatasetPreset> dataset_presets() noexcept;

const TestbedPreset& find_testbed(std::string_view name);

/// Expands a dataset preset name; `mixed` expands to small + medium + large.
std::vector<DatasetPreset> expand_dataset(std::string_view name);

// --------------------------------------------------------------- scenario

/// One group of files: either a preset population or an explicit list.
struct DatasetSpec {
    std::string preset;
    std::vector<Bytes> sizes;
};

enum class BaselineKind { None, Static, FixedChannels };

struct Scenario {
    std::string id = "scenario";
    std::string testbed = "cloudlab";
    NetworkProfile net = NetworkProfile(1e9, 0.036, 1e6, 32);
    CpuLimits cpu = CpuLimits::with_levels(8, 1.2e9, 2.4e9, 5);
    std::vector<DatasetSpec> datasets;
    std::vector<Bytes> bands{1'000'000, 50'000'000};

    SlaPolicy sla = SlaPolicy::max_throughput();
    TunerConfig tuner;

    bool load_control = true;
    LoadThresholds thresholds;
    bool pin_max_cpu = false;

    BaselineKind baseline = BaselineKind::None;
    int fixed_channels = 0;       // 0 = network max_channels

    PowerParams power;
    std::optional<int> knee_channels;
    double penalty = 0.02;
    double c_work = 0.0;

    std::vector<BandwidthEvent> events;
    std::uint64_t seed = 1;
    double noise_stddev = 0.0;
    double tick = 1.0;
    long max_ticks = 100000;

    void validate() const;

    /// Short policy label used in traces and comparisons (ME, EEMT, EETT,
    /// STATIC, FIXED).
    std::string policy_label() const;

    SimConfig sim_config() const;
};

/// Scenario seeded from presets; datasets are preset names.
Scenario make_preset_scenario(std::string_view testbed, std::vector<std::string> datasets,
                              SlaPolicy sla, std::uint64_t seed = 1);

/// Parses a YAML scenario. Unknown keys and bad values raise
/// ValidationError carrying the field path.
Scenario parse_scenario(std::string_view yaml_text);
Scenario load_scenario(const std::string& path);

/// Per-file sizes for the scenario's datasets. Preset populations are drawn
/// from Normal(avg, stddev), clamped positive, then rescaled so the count
/// and total match the preset exactly.
std::vector<FileSpec> synthesize_files(const Scenario& s);

std::vector<Bytes> synthesize_sizes(const DatasetPreset& preset, std::uint64_t seed);

}  // namespace eetune
