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

#include "eetune/harness.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "eetune/heuristic_init.hpp"
#include "eetune/load_control.hpp"
#include "json.hpp"

namespace eetune {

using nlohmann::json;

RunResult run_scenario(const Scenario& scenario) {
    scenario.validate();
    const NetworkProfile& net = scenario.net;

    const auto files = synthesize_files(scenario);
    TransferPlan plan = initialize_plan(files, net, scenario.sla, scenario.cpu, scenario.bands);
    if (scenario.pin_max_cpu) plan.cpu = CpuConfig::at_max(scenario.cpu);
    if (scenario.baseline == BaselineKind::FixedChannels) {
        const int ch = scenario.fixed_channels > 0 ? scenario.fixed_channels : net.max_channels();
        plan.num_channels = clamp_channels(ch, net);
        allocate_channels(plan.partitions, plan.num_channels);
    }

    SimEnvironment sim(scenario.sim_config());
    sim.apply_event(0.0);
    Tuner tuner(scenario.sla, scenario.tuner);
    const bool tuning = scenario.baseline == BaselineKind::None;
    std::vector<Measurement> slow_start;

    RunResult result;
    Summary& sum = result.summary;
    sum.scenario_id = scenario.id;
    sum.policy = scenario.policy_label();

    double ch_acc = 0.0;
    long tick = 0;
    while (!plan.done() && tick < scenario.max_ticks) {
        TraceRow row;
        row.tick = tick;
        row.state = tuning ? tuner.state().fsm : FsmState::Increase;
        row.num_ch = plan.num_channels;
        row.active_cores = plan.cpu.active_cores();
        row.freq_hz = plan.cpu.frequency();

        const Measurement m = sim.simulate_interval(plan, scenario.tuner.timeout);

        Feedback fb = Feedback::Neutral;
        if (tuning && tuner.state().fsm == FsmState::SlowStart) {
            slow_start.push_back(m);
            if (!slow_start_step(plan, m, net)) {
                fb = Feedback::Negative;
                ++sum.guarded_steps;
            }
            if (static_cast<int>(slow_start.size()) >= scenario.tuner.slow_start_rounds) {
                tuner.finish_slow_start(slow_start);
            }
        } else if (tuning) {
            fb = tuner.step(plan, m, net).feedback;
        } else {
            allocate_channels(plan.partitions, plan.num_channels);
        }
        if (scenario.load_control && !plan.done()) {
            plan.cpu = load_control_step(plan.cpu, m.cpu_load, scenario.thresholds);
        }
        sim.apply_event(sim.now());

        row.time_s = sim.now();
        row.interval_s = m.interval;
        row.avg_tput_bps = m.avg_tput;
        row.cpu_load = m.cpu_load;
        row.power_w = m.avg_power;
        row.energy_j = m.energy;
        row.remaining_bytes = plan.remaining_bytes();
        row.feedback = fb;

        sum.total_energy_j += m.energy;
        sum.bytes_moved += m.bytes_moved;
        ++sum.state_visits[static_cast<std::size_t>(row.state)];
        ch_acc += row.num_ch;
        result.trace.push_back(row);
        ++tick;
    }

    sum.ticks = tick;
    sum.transfer_time_s = sim.now();
    sum.avg_tput_bps =
        sum.transfer_time_s > 0 ? static_cast<double>(sum.bytes_moved) * 8.0 / sum.transfer_time_s
                                : 0.0;
    sum.final_num_ch = plan.num_channels;
    sum.mean_num_ch = tick > 0 ? ch_acc / static_cast<double>(tick) : 0.0;
    sum.aborted = !plan.done();
    return result;
}

// ------------------------------------------------------------------ traces

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

void write_trace(std::ostream& out, const std::vector<TraceRow>& trace, TraceFormat fmt) {
    if (fmt == TraceFormat::Csv) {
        out << kTraceHeader << '\n';
        for (const auto& r : trace) {
            out << r.tick << ',' << format_number(r.time_s) << ',' << to_string(r.state) << ','
                << r.num_ch << ',' << r.active_cores << ',' << format_number(r.freq_hz) << ','
                << format_number(r.avg_tput_bps) << ',' << format_number(r.cpu_load) << ','
                << format_number(r.power_w) << ',' << format_number(r.energy_j) << ','
                << r.remaining_bytes << ',' << to_string(r.feedback) << '\n';
        }
        return;
    }
    for (const auto& r : trace) {
        json j = {{"tick", r.tick},
                  {"time_s", r.time_s},
                  {"state", to_string(r.state)},
                  {"numCh", r.num_ch},
                  {"active_cores", r.active_cores},
                  {"freq_hz", r.freq_hz},
                  {"avg_tput_bps", r.avg_tput_bps},
                  {"cpu_load", r.cpu_load},
                  {"power_w", r.power_w},
                  {"energy_j", r.energy_j},
                  {"remaining_bytes", r.remaining_bytes},
                  {"feedback", to_string(r.feedback)}};
        out << j.dump() << '\n';
    }
}

void emit_trace(const std::vector<TraceRow>& trace, const std::string& path, TraceFormat fmt) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open trace for writing");
    write_trace(out, trace, fmt);
    out.flush();
    if (!out) throw std::runtime_error(path + ": write failed");
}

namespace {

Feedback parse_feedback(std::string_view s) {
    if (s == "POSITIVE") return Feedback::Positive;
    if (s == "NEGATIVE") return Feedback::Negative;
    if (s == "NEUTRAL") return Feedback::Neutral;
    throw ValidationError("feedback", "unknown value '" + std::string(s) + "'");
}

}  // namespace

std::vector<TraceRow> read_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open trace");
    std::string line;
    std::getline(in, line);
    if (line != kTraceHeader) throw ValidationError(path, "unexpected trace header");

    std::vector<TraceRow> rows;
    double prev_time = 0.0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
        if (f.size() != 12) throw ValidationError(path, "expected 12 columns: " + line);
        TraceRow r;
        r.tick = std::stol(f[0]);
        r.time_s = std::stod(f[1]);
        r.interval_s = r.time_s - prev_time;
        prev_time = r.time_s;
        r.state = parse_fsm_state(f[2]);
        r.num_ch = std::stoi(f[3]);
        r.active_cores = std::stoi(f[4]);
        r.freq_hz = std::stod(f[5]);
        r.avg_tput_bps = std::stod(f[6]);
        r.cpu_load = std::stod(f[7]);
        r.power_w = std::stod(f[8]);
        r.energy_j = std::stod(f[9]);
        r.remaining_bytes = std::stoull(f[10]);
        r.feedback = parse_feedback(f[11]);
        rows.push_back(r);
    }
    return rows;
}

// ---------------------------------------------------------------- summary

std::string summary_to_json(const Summary& s) {
    json visits;
    for (auto st : {FsmState::SlowStart, FsmState::Increase, FsmState::Warning, FsmState::Recovery}) {
        visits[std::string(to_string(st))] = s.state_visits[static_cast<std::size_t>(st)];
    }
    json j = {{"scenario_id", s.scenario_id},
              {"policy", s.policy},
              {"ticks", s.ticks},
              {"total_energy_J", s.total_energy_j},
              {"avg_tput_bps", s.avg_tput_bps},
              {"transfer_time_s", s.transfer_time_s},
              {"bytes_moved", s.bytes_moved},
              {"final_numCh", s.final_num_ch},
              {"mean_numCh", s.mean_num_ch},
              {"state_visits", visits},
              {"aborted", s.aborted},
              {"guarded_steps", s.guarded_steps}};
    return j.dump(2);
}

Summary summary_from_json(const std::string& text) {
    Summary s;
    try {
        const json j = json::parse(text);
        s.scenario_id = j.at("scenario_id").get<std::string>();
        s.policy = j.at("policy").get<std::string>();
        s.ticks = j.at("ticks").get<long>();
        s.total_energy_j = j.at("total_energy_J").get<double>();
        s.avg_tput_bps = j.at("avg_tput_bps").get<double>();
        s.transfer_time_s = j.at("transfer_time_s").get<double>();
        s.bytes_moved = j.at("bytes_moved").get<Bytes>();
        s.final_num_ch = j.at("final_numCh").get<int>();
        s.mean_num_ch = j.at("mean_numCh").get<double>();
        for (const auto& [k, v] : j.at("state_visits").items()) {
            s.state_visits[static_cast<std::size_t>(parse_fsm_state(k))] = v.get<long>();
        }
        s.aborted = j.at("aborted").get<bool>();
        s.guarded_steps = j.value("guarded_steps", 0L);
    } catch (const json::exception& e) {
        throw ValidationError("summary", e.what());
    }
    return s;
}

void write_summary(const Summary& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open summary for writing");
    out << summary_to_json(s) << '\n';
    if (!out) throw std::runtime_error(path + ": write failed");
}

Summary read_summary(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open summary");
    std::stringstream ss;
    ss << in.rdbuf();
    return summary_from_json(ss.str());
}

// ------------------------------------------------------------- comparison

Comparison compare_runs(const std::vector<Summary>& runs, const std::string& baseline) {
    if (runs.size() < 2) throw ValidationError("runs", "at least two summaries are required");
    for (const auto& r : runs) {
        if (r.scenario_id != runs.front().scenario_id) {
            throw ValidationError("runs", "scenario ids differ: '" + runs.front().scenario_id +
                                              "' vs '" + r.scenario_id + "'");
        }
    }
    const Summary* base = &runs.front();
    if (!baseline.empty()) {
        base = nullptr;
        for (const auto& r : runs) {
            if (r.policy == baseline) {
                base = &r;
                break;
            }
        }
        if (!base) throw ValidationError("baseline", "no run with policy '" + baseline + "'");
    }

    auto delta = [](double v, double ref) { return ref != 0.0 ? (v - ref) / ref * 100.0 : 0.0; };
    Comparison c{runs.front().scenario_id, base->policy, {}};
    for (const auto& r : runs) {
        c.rows.push_back({r.policy, r.total_energy_j, r.avg_tput_bps, r.transfer_time_s,
                          r.final_num_ch, delta(r.total_energy_j, base->total_energy_j),
                          delta(r.avg_tput_bps, base->avg_tput_bps),
                          delta(r.transfer_time_s, base->transfer_time_s)});
    }
    return c;
}

std::string format_comparison(const Comparison& c) {
    std::ostringstream out;
    out << "scenario: " << c.scenario_id << "  baseline: " << c.baseline << '\n';
    out << std::left << std::setw(8) << "policy" << std::right << std::setw(14) << "energy_J"
        << std::setw(10) << "dE%" << std::setw(14) << "tput_Mbps" << std::setw(10) << "dT%"
        << std::setw(12) << "time_s" << std::setw(10) << "dt%" << std::setw(8) << "numCh" << '\n';
    out << std::fixed;
    for (const auto& r : c.rows) {
        out << std::left << std::setw(8) << r.policy << std::right << std::setprecision(1)
            << std::setw(14) << r.energy_j << std::setw(10) << r.energy_delta_pct
            << std::setw(14) << r.tput_bps / kMbps << std::setw(10) << r.tput_delta_pct
            << std::setw(12) << r.time_s << std::setw(10) << r.time_delta_pct << std::setw(8)
            << r.final_num_ch << '\n';
    }
    return out.str();
}

}  // namespace eetune
