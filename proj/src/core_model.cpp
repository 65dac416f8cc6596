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

#include "eetune/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eetune {

namespace {

void require(bool ok, const char* field, const std::string& what) {
    if (!ok) throw ValidationError(field, what);
}

std::string num(double v) { return std::to_string(v); }

}  // namespace

long long ceil_ratio(double num, double den) {
    const double q = num / den;
    const double r = std::round(q);
    if (std::abs(q - r) <= 1e-9 * std::max(1.0, std::abs(q))) return static_cast<long long>(r);
    return static_cast<long long>(std::ceil(q));
}

// --------------------------------------------------------------------------

NetworkProfile::NetworkProfile(double bandwidth_bps, double rtt_s, double avg_window_bytes,
                               int max_channels)
    : bandwidth_(bandwidth_bps), rtt_(rtt_s), avg_window_(avg_window_bytes),
      max_channels_(max_channels) {
    require(bandwidth_ > 0 && std::isfinite(bandwidth_), "network.bandwidth",
            "must be > 0, got " + num(bandwidth_));
    require(rtt_ > 0 && std::isfinite(rtt_), "network.rtt", "must be > 0, got " + num(rtt_));
    require(avg_window_ > 0 && std::isfinite(avg_window_), "network.avg_window_size",
            "must be > 0, got " + num(avg_window_));
    require(max_channels_ >= 1, "network.max_channels",
            "must be >= 1, got " + std::to_string(max_channels_));
}

NetworkProfile NetworkProfile::with_window(double avg_window_bytes) const {
    return {bandwidth_, rtt_, avg_window_bytes, max_channels_};
}

NetworkProfile NetworkProfile::with_max_channels(int max_channels) const {
    return {bandwidth_, rtt_, avg_window_, max_channels};
}

FileSpec::FileSpec(Bytes size_bytes, std::uint64_t file_id) : size(size_bytes), id(file_id) {
    require(size > 0, "file.size", "must be > 0");
}

// --------------------------------------------------------------------------

DatasetPartition::DatasetPartition(std::vector<FileSpec> files, std::string label)
    : files_(std::move(files)), label_(std::move(label)) {
    require(!files_.empty(), "partition.files", "must not be empty");
    total_ = std::accumulate(files_.begin(), files_.end(), Bytes{0},
                             [](Bytes acc, const FileSpec& f) { return acc + f.size; });
    remaining_ = total_;
    avg_size_ = static_cast<double>(total_) / static_cast<double>(files_.size());
}

void DatasetPartition::set_weight(double w) {
    require(w >= 0.0 && w <= 1.0 + 1e-12, "partition.weight", "must be in [0,1], got " + num(w));
    weight_ = std::min(w, 1.0);
}

void DatasetPartition::set_cc_level(int cc) {
    require(cc >= 0, "partition.cc_level", "must be >= 0, got " + std::to_string(cc));
    cc_level_ = cc;
}

void DatasetPartition::set_pp_level(int pp) {
    require(pp >= 1, "partition.pp_level", "must be >= 1, got " + std::to_string(pp));
    pp_level_ = pp;
}

void DatasetPartition::set_remaining(Bytes remaining) {
    require(remaining <= total_, "partition.remaining_bytes", "exceeds total_bytes");
    remaining_ = remaining;
}

Bytes DatasetPartition::drain(Bytes bytes) noexcept {
    const Bytes taken = std::min(bytes, remaining_);
    remaining_ -= taken;
    return taken;
}

// --------------------------------------------------------------------------

CpuLimits::CpuLimits(int num_cores, double min_freq_hz, double max_freq_hz, double freq_step_hz)
    : num_cores_(num_cores), min_freq_(min_freq_hz), max_freq_(max_freq_hz),
      freq_step_(freq_step_hz), max_level_(0) {
    require(num_cores_ >= 1, "cpu.num_cores", "must be >= 1");
    require(min_freq_ > 0, "cpu.min_freq", "must be > 0");
    require(max_freq_ >= min_freq_, "cpu.max_freq", "must be >= min_freq");
    if (max_freq_ == min_freq_) {
        freq_step_ = freq_step_ > 0 ? freq_step_ : 1.0;
        return;
    }
    require(freq_step_ > 0, "cpu.freq_step", "must be > 0 when max_freq > min_freq");
    const double span = (max_freq_ - min_freq_) / freq_step_;
    const double k = std::round(span);
    require(std::abs(span - k) <= 1e-6, "cpu.freq_step",
            "max_freq - min_freq must be an integer multiple of freq_step");
    max_level_ = static_cast<int>(k);
}

CpuLimits CpuLimits::with_levels(int num_cores, double min_freq_hz, double max_freq_hz,
                                 int levels) {
    require(levels >= 1, "cpu.freq_levels", "must be >= 1");
    if (levels == 1) return {num_cores, min_freq_hz, min_freq_hz, 1.0};
    return {num_cores, min_freq_hz, max_freq_hz, (max_freq_hz - min_freq_hz) / (levels - 1)};
}

double CpuLimits::frequency_at(int level) const noexcept {
    if (level >= max_level_) return max_freq_;
    return min_freq_ + level * freq_step_;
}

CpuConfig::CpuConfig(CpuLimits limits, int active_cores, int freq_level)
    : limits_(limits), active_cores_(active_cores), freq_level_(freq_level) {
    require(active_cores_ >= 1 && active_cores_ <= limits_.num_cores(), "cpu.active_cores",
            "must be in [1, " + std::to_string(limits_.num_cores()) + "], got " +
                std::to_string(active_cores_));
    require(freq_level_ >= 0 && freq_level_ <= limits_.max_level(), "cpu.frequency",
            "level " + std::to_string(freq_level_) + " outside platform range");
}

CpuConfig CpuConfig::at_min_freq(const CpuLimits& limits, int active_cores) {
    return {limits, active_cores, 0};
}

CpuConfig CpuConfig::at_max(const CpuLimits& limits) {
    return {limits, limits.num_cores(), limits.max_level()};
}

// --------------------------------------------------------------------------

std::string_view to_string(SlaKind kind) noexcept {
    switch (kind) {
        case SlaKind::MinEnergy: return "min_energy";
        case SlaKind::MaxThroughput: return "max_throughput";
        case SlaKind::TargetThroughput: return "target_throughput";
    }
    return "?";
}

SlaKind parse_sla_kind(std::string_view text) {
    if (text == "min_energy" || text == "ME") return SlaKind::MinEnergy;
    if (text == "max_throughput" || text == "EEMT") return SlaKind::MaxThroughput;
    if (text == "target_throughput" || text == "EETT") return SlaKind::TargetThroughput;
    throw ValidationError("sla.policy", "unknown policy '" + std::string(text) + "'");
}

SlaPolicy SlaPolicy::target(double bps) {
    SlaPolicy p{SlaKind::TargetThroughput, bps};
    p.validate();
    return p;
}

void SlaPolicy::validate() const {
    if (kind == SlaKind::TargetThroughput) {
        require(target_tput.has_value(), "sla.target_tput_bps",
                "required for target_throughput policy");
    }
    if (target_tput) {
        require(*target_tput > 0 && std::isfinite(*target_tput), "sla.target_tput_bps",
                "must be > 0");
    }
}

void TunerConfig::validate() const {
    require(alpha > 0 && alpha < 1, "tuner.alpha", "must be in (0,1), got " + num(alpha));
    require(beta > 0, "tuner.beta", "must be > 0, got " + num(beta));
    require(delta_ch >= 1, "tuner.delta_ch", "must be >= 1");
    require(timeout > 0, "tuner.timeout_s", "must be > 0");
    require(slow_start_rounds >= 1, "tuner.slow_start_rounds", "must be >= 1");
}

Measurement Measurement::from(double interval_s, Bytes bytes, double avg_power_w, double load) {
    Measurement m;
    m.interval = interval_s;
    m.bytes_moved = bytes;
    m.avg_tput = interval_s > 0 ? static_cast<double>(bytes) * 8.0 / interval_s : 0.0;
    m.avg_power = avg_power_w;
    m.energy = avg_power_w * interval_s;
    m.cpu_load = load;
    m.validate();
    return m;
}

void Measurement::validate() const {
    require(interval >= 0, "measurement.interval", "must be >= 0");
    require(avg_tput >= 0, "measurement.avg_tput", "must be >= 0");
    require(avg_power >= 0, "measurement.avg_power", "must be >= 0");
    require(energy >= 0, "measurement.energy", "must be >= 0");
    require(cpu_load >= 0 && cpu_load <= 1, "measurement.cpu_load", "must be in [0,1]");
    if (interval > 0) {
        const double expect = static_cast<double>(bytes_moved) * 8.0 / interval;
        require(std::abs(avg_tput - expect) <= 1e-6 * std::max(1.0, expect),
                "measurement.avg_tput", "inconsistent with bytes_moved / interval");
    }
}

void EnergyEstimate::record(const Measurement& m) noexcept {
    e_last = m.energy;
    e_spent += m.energy;
}

void EnergyEstimate::refresh(const Measurement& m, Bytes remaining) {
    remain_data = remaining;
    remain_time = static_cast<double>(remaining) * 8.0 / m.avg_tput;
    e_future = m.avg_power * remain_time;
}

std::string_view to_string(FsmState s) noexcept {
    switch (s) {
        case FsmState::SlowStart: return "SLOW_START";
        case FsmState::Increase: return "INCREASE";
        case FsmState::Warning: return "WARNING";
        case FsmState::Recovery: return "RECOVERY";
    }
    return "?";
}

FsmState parse_fsm_state(std::string_view text) {
    if (text == "SLOW_START") return FsmState::SlowStart;
    if (text == "INCREASE") return FsmState::Increase;
    if (text == "WARNING") return FsmState::Warning;
    if (text == "RECOVERY") return FsmState::Recovery;
    throw ValidationError("state", "unknown FSM state '" + std::string(text) + "'");
}

// --------------------------------------------------------------------------

Bytes TransferPlan::remaining_bytes() const noexcept {
    Bytes r = 0;
    for (const auto& p : partitions) r += p.remaining_bytes();
    return r;
}

Bytes TransferPlan::total_bytes() const noexcept {
    Bytes r = 0;
    for (const auto& p : partitions) r += p.total_bytes();
    return r;
}

int TransferPlan::active_partitions() const noexcept {
    int n = 0;
    for (const auto& p : partitions) n += p.complete() ? 0 : 1;
    return n;
}

int TransferPlan::open_streams() const noexcept {
    int n = 0;
    for (const auto& p : partitions) n += p.complete() ? 0 : p.cc_level();
    return n;
}

int TransferPlan::connections() const noexcept {
    return std::min(open_streams(), num_channels);
}

void TransferPlan::validate(const NetworkProfile& net) const {
    require(!partitions.empty(), "plan.partitions", "must not be empty");
    require(num_channels >= 1 && num_channels <= net.max_channels(), "plan.num_channels",
            "must be in [1, " + std::to_string(net.max_channels()) + "], got " +
                std::to_string(num_channels));
    if (done()) return;
    double sum = 0.0;
    for (const auto& p : partitions) {
        if (!p.complete()) sum += p.weight();
    }
    require(std::abs(sum - 1.0) <= 1e-9, "plan.partitions.weight",
            "active weights must sum to 1, got " + num(sum));
}

}  // namespace eetune
