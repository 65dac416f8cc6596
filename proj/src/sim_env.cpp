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

#include "eetune/sim_env.hpp"

#include <algorithm>
#include <cmath>

namespace eetune {

void PowerParams::validate() const {
    if (p_idle < 0 || p_core_base < 0 || k_freq < 0 || util_exponent < 0) {
        throw ValidationError("power", "all power parameters must be >= 0");
    }
}

void CongestionParams::validate() const {
    if (knee_channels < 1) throw ValidationError("congestion.knee_channels", "must be >= 1");
    if (penalty < 0) throw ValidationError("congestion.penalty", "must be >= 0");
}

void SimConfig::validate() const {
    if (!(tick > 0)) throw ValidationError("sim.tick_s", "must be > 0");
    if (noise_stddev < 0) throw ValidationError("sim.noise_stddev", "must be >= 0");
    power.validate();
    congestion.validate();
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (!(events[i].bandwidth > 0)) {
            throw ValidationError("events[" + std::to_string(i) + "].bandwidth_bps", "must be > 0");
        }
        if (i > 0 && events[i].time < events[i - 1].time) {
            throw ValidationError("events[" + std::to_string(i) + "].time_s",
                                  "events must be sorted by time");
        }
    }
}

double SimConfig::effective_c_work() const noexcept {
    return c_work > 0 ? c_work : calibrated_c_work(net, cpu_limits);
}

double calibrated_c_work(const NetworkProfile& net, const CpuLimits& limits) noexcept {
    return 0.7 * limits.num_cores() * limits.max_freq() / net.bandwidth();
}

double congestion_efficiency(int streams, const CongestionParams& c) noexcept {
    const double over = std::max(0, streams - c.knee_channels);
    return 1.0 / (1.0 + c.penalty * over * over);
}

double throughput_law(int streams, double available_bw, const NetworkProfile& net,
                      const CongestionParams& c) noexcept {
    if (streams <= 0) return 0.0;
    const double offered = streams * net.channel_throughput();
    return std::min(available_bw, offered) * congestion_efficiency(streams, c);
}

double cpu_load_model(double tput, const CpuConfig& cpu, double c_work) noexcept {
    const double capacity = cpu.active_cores() * cpu.frequency();
    return std::clamp(c_work * tput / capacity, 0.0, 1.0);
}

double power_model(const PowerParams& p, const CpuConfig& cpu, double cpu_load) noexcept {
    const double ghz = cpu.frequency() / kGHz;
    const double per_core = p.p_core_base + p.k_freq * ghz * ghz * ghz;
    return p.p_idle + cpu.active_cores() * per_core * std::pow(cpu_load, p.util_exponent);
}

double measure_energy(std::span<const PowerSample> trace) {
    if (trace.empty()) throw ValidationError("power_trace", "must not be empty");
    double e = 0.0;
    for (const auto& s : trace) e += s.watts * s.seconds;
    return e;
}

// --------------------------------------------------------------------------

SimEnvironment::SimEnvironment(SimConfig cfg)
    : cfg_(std::move(cfg)), c_work_(cfg_.effective_c_work()), b_avail_(cfg_.net.bandwidth()),
      rng_(cfg_.seed), noise_(1.0, cfg_.noise_stddev > 0 ? cfg_.noise_stddev : 1.0) {
    cfg_.validate();
}

void SimEnvironment::apply_event(double time) {
    b_avail_ = cfg_.net.bandwidth();
    for (const auto& ev : cfg_.events) {
        if (ev.time <= time) b_avail_ = ev.bandwidth;
    }
}

Measurement SimEnvironment::simulate_interval(TransferPlan& plan, double duration) {
    if (!(duration > 0)) throw ValidationError("duration", "must be > 0");

    if (plan.done()) {
        now_ += duration;
        const double idle = power_model(cfg_.power, plan.cpu, 0.0);
        return Measurement::from(duration, 0, idle, 0.0);
    }

    double elapsed = 0.0;
    double energy = 0.0;
    double load_time = 0.0;
    Bytes moved = 0;

    while (elapsed < duration - 1e-12 && !plan.done()) {
        const double dt = std::min(cfg_.tick, duration - elapsed);
        const int streams = plan.open_streams();
        double tput = throughput_law(plan.connections(), b_avail_, cfg_.net, cfg_.congestion);
        if (cfg_.noise_stddev > 0) tput *= std::clamp(noise_(rng_), 0.5, 1.5);

        const auto capacity = static_cast<Bytes>(std::floor(tput * dt / 8.0));
        Bytes drained = 0;
        for (auto& p : plan.partitions) {
            if (p.complete() || p.cc_level() == 0) continue;
            const auto share = static_cast<Bytes>(static_cast<unsigned __int128>(capacity) *
                                                  static_cast<unsigned>(p.cc_level()) /
                                                  static_cast<unsigned>(streams));
            drained += p.drain(share);
        }

        // The last tick ends when the final byte leaves.
        double dt_eff = dt;
        if (plan.done() && capacity > 0) {
            dt_eff = dt * static_cast<double>(drained) / static_cast<double>(capacity);
            dt_eff = std::max(dt_eff, 1e-9);
        }
        const double achieved = static_cast<double>(drained) * 8.0 / dt_eff;
        const double load = cpu_load_model(achieved, plan.cpu, c_work_);
        energy += power_model(cfg_.power, plan.cpu, load) * dt_eff;
        load_time += load * dt_eff;
        moved += drained;
        elapsed += dt_eff;
    }

    now_ += elapsed;
    return Measurement::from(elapsed, moved, energy / elapsed, std::min(1.0, load_time / elapsed));
}

}  // namespace eetune
