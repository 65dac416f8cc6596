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

// Domain types shared by the tuners, the load controller and the simulator.
//
// Units are fixed throughout the library:
//   bandwidth / throughput  bits per second
//   sizes                   bytes (decimal prefixes, 1 MB = 10^6 bytes)
//   time                    seconds
//   energy / power          joules / watts
//   frequency               hertz

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eetune {

using Bytes = std::uint64_t;

inline constexpr double kKB = 1e3;
inline constexpr double kMB = 1e6;
inline constexpr double kGB = 1e9;
inline constexpr double kMbps = 1e6;
inline constexpr double kGbps = 1e9;
inline constexpr double kGHz = 1e9;

/// Raised whenever a value object is built with an out-of-range field.
/// The message starts with the offending field path.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(const std::string& field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(field) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Ceiling of num/den that tolerates floating error around exact integers,
/// so that e.g. a window equal to the BDP yields exactly one channel.
long long ceil_ratio(double num, double den);

// --------------------------------------------------------------------------

class NetworkProfile {
public:
    NetworkProfile(double bandwidth_bps, double rtt_s, double avg_window_bytes, int max_channels);

    double bandwidth() const noexcept { return bandwidth_; }
    double rtt() const noexcept { return rtt_; }
    double avg_window_size() const noexcept { return avg_window_; }
    int max_channels() const noexcept { return max_channels_; }

    /// Bandwidth-delay product in bytes.
    double bdp() const noexcept { return bandwidth_ / 8.0 * rtt_; }

    /// Throughput of one channel: one window per round trip.
    double channel_throughput() const noexcept { return avg_window_ * 8.0 / rtt_; }

    NetworkProfile with_window(double avg_window_bytes) const;
    NetworkProfile with_max_channels(int max_channels) const;

private:
    double bandwidth_;
    double rtt_;
    double avg_window_;
    int max_channels_;
};

struct FileSpec {
    Bytes size;
    std::uint64_t id;

    FileSpec(Bytes size_bytes, std::uint64_t file_id);
};

/// A cluster of files sharing a size band, plus its tuning knobs.
class DatasetPartition {
public:
    DatasetPartition(std::vector<FileSpec> files, std::string label = {});

    const std::vector<FileSpec>& files() const noexcept { return files_; }
    const std::string& label() const noexcept { return label_; }
    std::size_t file_count() const noexcept { return files_.size(); }
    Bytes total_bytes() const noexcept { return total_; }
    Bytes remaining_bytes() const noexcept { return remaining_; }
    double avg_file_size() const noexcept { return avg_size_; }
    double weight() const noexcept { return weight_; }
    int cc_level() const noexcept { return cc_level_; }
    int pp_level() const noexcept { return pp_level_; }
    bool complete() const noexcept { return remaining_ == 0; }

    void set_weight(double w);
    void set_cc_level(int cc);
    void set_pp_level(int pp);
    void set_remaining(Bytes remaining);

    /// Removes up to `bytes` from the remaining volume; returns what was taken.
    Bytes drain(Bytes bytes) noexcept;

private:
    std::vector<FileSpec> files_;
    std::string label_;
    Bytes total_ = 0;
    Bytes remaining_ = 0;
    double avg_size_ = 0.0;
    double weight_ = 0.0;
    int cc_level_ = 0;
    int pp_level_ = 1;
};

/// Platform DVFS limits. Frequencies are discrete: min + k * step.
class CpuLimits {
public:
    CpuLimits(int num_cores, double min_freq_hz, double max_freq_hz, double freq_step_hz);

    /// Evenly spaced `levels` P-states between min and max.
    static CpuLimits with_levels(int num_cores, double min_freq_hz, double max_freq_hz, int levels);

    int num_cores() const noexcept { return num_cores_; }
    double min_freq() const noexcept { return min_freq_; }
    double max_freq() const noexcept { return max_freq_; }
    double freq_step() const noexcept { return freq_step_; }
    int max_level() const noexcept { return max_level_; }
    double frequency_at(int level) const noexcept;

private:
    int num_cores_;
    double min_freq_;
    double max_freq_;
    double freq_step_;
    int max_level_;
};

/// Active core count plus frequency, stored as a P-state index so that the
/// frequency is always exactly on the grid.
class CpuConfig {
public:
    CpuConfig(CpuLimits limits, int active_cores, int freq_level);

    static CpuConfig at_min_freq(const CpuLimits& limits, int active_cores);
    static CpuConfig at_max(const CpuLimits& limits);

    const CpuLimits& limits() const noexcept { return limits_; }
    int active_cores() const noexcept { return active_cores_; }
    int freq_level() const noexcept { return freq_level_; }
    double frequency() const noexcept { return limits_.frequency_at(freq_level_); }

    bool can_add_core() const noexcept { return active_cores_ < limits_.num_cores(); }
    bool can_remove_core() const noexcept { return active_cores_ > 1; }
    bool can_raise_freq() const noexcept { return freq_level_ < limits_.max_level(); }
    bool can_lower_freq() const noexcept { return freq_level_ > 0; }

    CpuConfig with_cores(int cores) const { return {limits_, cores, freq_level_}; }
    CpuConfig with_level(int level) const { return {limits_, active_cores_, level}; }

    friend bool operator==(const CpuConfig& a, const CpuConfig& b) noexcept {
        return a.active_cores_ == b.active_cores_ && a.freq_level_ == b.freq_level_ &&
               a.limits_.num_cores() == b.limits_.num_cores() &&
               a.limits_.max_level() == b.limits_.max_level();
    }

private:
    CpuLimits limits_;
    int active_cores_;
    int freq_level_;
};

enum class SlaKind { MinEnergy, MaxThroughput, TargetThroughput };

std::string_view to_string(SlaKind kind) noexcept;
SlaKind parse_sla_kind(std::string_view text);

struct SlaPolicy {
    SlaKind kind;
    std::optional<double> target_tput;

    static SlaPolicy min_energy() { return {SlaKind::MinEnergy, std::nullopt}; }
    static SlaPolicy max_throughput() { return {SlaKind::MaxThroughput, std::nullopt}; }
    static SlaPolicy target(double bps);

    void validate() const;
    bool energy_driven() const noexcept { return kind == SlaKind::MinEnergy; }
};

struct TunerConfig {
    double alpha = 0.1;
    double beta = 0.1;
    int delta_ch = 1;
    double timeout = 1.0;
    int slow_start_rounds = 2;

    void validate() const;
};

/// What one timeout's worth of simulated transfer produced.
struct Measurement {
    double interval = 0.0;
    Bytes bytes_moved = 0;
    double avg_tput = 0.0;
    double avg_power = 0.0;
    double energy = 0.0;
    double cpu_load = 0.0;

    /// Builds a measurement with throughput derived from bytes and interval
    /// and energy derived from power and interval.
    static Measurement from(double interval_s, Bytes bytes, double avg_power_w, double cpu_load);

    void validate() const;
};

/// Energy bookkeeping for the minimum-energy tuner. total() is a
/// whole-transfer estimate: energy already spent plus the predicted cost of
/// the remaining data at the last interval's power and throughput.
struct EnergyEstimate {
    double e_last = 0.0;          // last interval
    double e_spent = 0.0;         // every interval so far, e_last included
    double e_future = 0.0;        // avg_power * remain_time
    double e_past = 0.0;          // total() when the last configuration was accepted
    double remain_time = 0.0;
    Bytes remain_data = 0;

    double total() const noexcept { return e_spent + e_future; }

    /// Accounts one interval's energy. Called for every interval, including
    /// those with nothing measured.
    void record(const Measurement& m) noexcept;

    /// Fills remain_time and e_future from the last interval and the data
    /// still to move. Requires m.avg_tput > 0.
    void refresh(const Measurement& m, Bytes remaining);
};

enum class FsmState { SlowStart, Increase, Warning, Recovery };

std::string_view to_string(FsmState s) noexcept;
FsmState parse_fsm_state(std::string_view text);

struct TransferPlan {
    std::vector<DatasetPartition> partitions;
    int num_channels = 1;
    CpuConfig cpu;

    Bytes remaining_bytes() const noexcept;
    Bytes total_bytes() const noexcept;
    int active_partitions() const noexcept;
    /// Sum of per-partition concurrency levels.
    int open_streams() const noexcept;
    /// Connections actually open: the per-partition levels, capped by the
    /// global channel budget.
    int connections() const noexcept;
    bool done() const noexcept { return remaining_bytes() == 0; }

    void validate(const NetworkProfile& net) const;
};

}  // namespace eetune
