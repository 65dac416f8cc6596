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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "eetune/scenario.hpp"
#include "eetune/tuning_fsm.hpp"

namespace eetune {

struct TraceRow {
    long tick = 0;
    double time_s = 0.0;          // end of the interval
    double interval_s = 0.0;      // not emitted; time_s differences recover it
    FsmState state = FsmState::SlowStart;
    int num_ch = 0;
    int active_cores = 0;
    double freq_hz = 0.0;
    double avg_tput_bps = 0.0;
    double cpu_load = 0.0;
    double power_w = 0.0;
    double energy_j = 0.0;
    Bytes remaining_bytes = 0;
    Feedback feedback = Feedback::Neutral;
};

struct Summary {
    std::string scenario_id;
    std::string policy;
    long ticks = 0;
    double total_energy_j = 0.0;
    double avg_tput_bps = 0.0;
    double transfer_time_s = 0.0;
    Bytes bytes_moved = 0;
    int final_num_ch = 0;
    double mean_num_ch = 0.0;
    std::array<long, 4> state_visits{};   // indexed by FsmState
    bool aborted = false;                 // max_ticks reached before completion
    long guarded_steps = 0;               // slow-start rounds skipped for lack of throughput
};

struct RunResult {
    std::vector<TraceRow> trace;
    Summary summary;
};

/// Builds the initial plan, runs slow start and then the SLA tuner (or the
/// configured baseline) against the simulator, one row per timeout. Load
/// control, when enabled, runs after the tuner in every timeout.
RunResult run_scenario(const Scenario& scenario);

enum class TraceFormat { Csv, JsonLines };

inline constexpr const char* kTraceHeader =
    "tick,time_s,state,numCh,active_cores,freq_hz,avg_tput_bps,cpu_load,power_w,energy_j,"
    "remaining_bytes,feedback";

void write_trace(std::ostream& out, const std::vector<TraceRow>& trace, TraceFormat fmt);

/// Writes the trace to `path`; I/O failures throw std::runtime_error
/// naming the path.
void emit_trace(const std::vector<TraceRow>& trace, const std::string& path,
                TraceFormat fmt = TraceFormat::Csv);

std::vector<TraceRow> read_trace_csv(const std::string& path);

std::string summary_to_json(const Summary& s);
Summary summary_from_json(const std::string& text);
void write_summary(const Summary& s, const std::string& path);
Summary read_summary(const std::string& path);

struct ComparisonRow {
    std::string policy;
    double energy_j;
    double tput_bps;
    double time_s;
    int final_num_ch;
    double energy_delta_pct;
    double tput_delta_pct;
    double time_delta_pct;
};

struct Comparison {
    std::string scenario_id;
    std::string baseline;
    std::vector<ComparisonRow> rows;
};

/// Tabulates runs of one scenario with percentage deltas against the row
/// whose policy is `baseline` (the first summary when empty).
Comparison compare_runs(const std::vector<Summary>& runs, const std::string& baseline = {});

std::string format_comparison(const Comparison& c);

/// Shortest round-trip decimal form of a double.
std::string format_number(double v);

}  // namespace eetune
