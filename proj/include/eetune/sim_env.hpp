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

// Discrete-time stand-in for a wide-area transfer and the client CPU.
//
// Throughput law for n open streams on a link with B bits/s available:
//
//   T(n) = min(B, n * W * 8 / RTT) * eff(n),  eff(n) = 1 / (1 + g * max(0, n - n*)^2)
//
// scaled by clamped multiplicative noise. CPU demand is linear in
// throughput and the client draws
//
//   P = p_idle + cores * (p_core + k * f_GHz^3) * load^u
//
// watts. Bytes leave each partition in proportion to its stream count.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "eetune/core_model.hpp"

namespace eetune {

struct PowerParams {
    double p_idle = 15.0;         // W
    double p_core_base = 2.0;     // W per active core
    double k_freq = 1.5;          // W per core per GHz^3
    double util_exponent = 1.0;

    void validate() const;
};

struct CongestionParams {
    int knee_channels = 1;        // n*
    double penalty = 0.0;         // gamma

    void validate() const;
};

struct BandwidthEvent {
    double time;                  // s
    double bandwidth;             // bit/s
};

struct SimConfig {
    NetworkProfile net;
    CpuLimits cpu_limits;
    std::vector<BandwidthEvent> events;
    double noise_stddev = 0.0;
    std::uint64_t seed = 1;
    PowerParams power;
    CongestionParams congestion;
    double tick = 1.0;
    /// CPU cycles per transferred bit; <= 0 selects the calibrated default.
    double c_work = 0.0;

    void validate() const;
    double effective_c_work() const noexcept;
};

/// Cycles per bit such that all cores at max frequency carry the full
/// nominal bandwidth at 70% load.
double calibrated_c_work(const NetworkProfile& net, const CpuLimits& limits) noexcept;

double congestion_efficiency(int streams, const CongestionParams& c) noexcept;

/// Noise-free aggregate throughput of `streams` streams.
double throughput_law(int streams, double available_bw, const NetworkProfile& net,
                      const CongestionParams& c) noexcept;

double cpu_load_model(double tput, const CpuConfig& cpu, double c_work) noexcept;

double power_model(const PowerParams& p, const CpuConfig& cpu, double cpu_load) noexcept;

struct PowerSample {
    double watts;
    double seconds;
};

/// Integral of a piecewise-constant power trace. Empty trace is an error.
double measure_energy(std::span<const PowerSample> trace);

class SimEnvironment {
public:
    explicit SimEnvironment(SimConfig cfg);

    const SimConfig& config() const noexcept { return cfg_; }
    double now() const noexcept { return now_; }
    double available_bandwidth() const noexcept { return b_avail_; }

    /// Advances the clock by `duration` (less if the workload completes) and
    /// drains bytes from the plan's partitions.
    Measurement simulate_interval(TransferPlan& plan, double duration);

    /// Sets the available bandwidth to the latest event at or before `time`.
    /// Events sharing a timestamp resolve to the later one in the list.
    void apply_event(double time);

private:
    SimConfig cfg_;
    double c_work_;
    double now_ = 0.0;
    double b_avail_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> noise_;
};

}  // namespace eetune
