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


// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Scenario files come from the repository's scenarios/
// directory so every number here can be reproduced with the CLI.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "eetune/harness.hpp"
#include "eetune/heuristic_init.hpp"
#include "eetune/tuning_fsm.hpp"
#include "support/properties.hpp"

#ifndef EETUNE_SCENARIO_DIR
#define EETUNE_SCENARIO_DIR "scenarios"
#endif

using namespace eetune;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Scenario scenario(const std::string& name) {
    return load_scenario((fs::path(EETUNE_SCENARIO_DIR) / (name + ".yaml")).string());
}

double mean_tput(const std::vector<TraceRow>& rows, std::size_t from, std::size_t to) {
    to = std::min(to, rows.size());
    if (from >= to) return 0.0;
    double s = 0.0;
    for (std::size_t i = from; i < to; ++i) s += rows[i].avg_tput_bps;
    return s / static_cast<double>(to - from);
}

// ------------------------------------------------------------------ 1

Verdict table_fidelity() {
    const std::array<std::pair<const char*, double>, 3> bdp{
        {{"chameleon", 40e6}, {"cloudlab", 4.5e6}, {"didclab", 5.5e6}}};
    const std::array<std::pair<const char*, double>, 3> totals{
        {{"small", 1.94e9}, {"medium", 11.70e9}, {"large", 27.85e9}}};
    std::ostringstream d;
    bool ok = true;
    for (auto [name, want] : bdp) {
        const auto& tb = find_testbed(name);
        const double got = tb.network().bdp();
        ok &= std::abs(got - want) <= 1e-9 * want && tb.table_bdp == want;
        d << name << " bdp " << got / 1e6 << " MB; ";
    }
    for (auto [name, want] : totals) {
        const auto presets = expand_dataset(name);
        const auto sizes = synthesize_sizes(presets.front(), 1);
        const auto total = std::accumulate(sizes.begin(), sizes.end(), Bytes{0});
        ok &= static_cast<double>(total) == want;
        d << name << " " << static_cast<double>(total) / 1e9 << " GB; ";
    }
    return {ok, d.str()};
}

// ------------------------------------------------------------------ 2
//
// Hand-transcribed transition table. `dir` is the requested channel move in
// units of delta_ch before clamping; `anchor` says whether the reference
// (e_past or refTput) is re-taken from this interval.

enum class Fb { Pos, Neu, Neg, Zero };

struct Row {
    SlaKind tuner;
    FsmState from;
    Fb fb;
    FsmState to;
    int dir;
    bool anchor;
};

constexpr FsmState I = FsmState::Increase, W = FsmState::Warning, R = FsmState::Recovery;
constexpr SlaKind ME = SlaKind::MinEnergy, MT = SlaKind::MaxThroughput,
                  TT = SlaKind::TargetThroughput;

// clang-format off
constexpr Row kTable[] = {
    {ME, I, Fb::Pos,  I, +1, true},  {ME, I, Fb::Neu,  I, 0, false},
    {ME, I, Fb::Neg,  W,  0, false}, {ME, I, Fb::Zero, W, 0, false},
    {ME, W, Fb::Pos,  I,  0, false}, {ME, W, Fb::Neu,  I, 0, false},
    {ME, W, Fb::Neg,  R, -1, false}, {ME, W, Fb::Zero, R, -1, false},
    {ME, R, Fb::Pos,  I,  0, true},  {ME, R, Fb::Neu,  I, 0, true},
    {ME, R, Fb::Neg,  I, +1, true},  {ME, R, Fb::Zero, I, +1, false},

    {MT, I, Fb::Pos,  I, +1, true},  {MT, I, Fb::Neu,  I, 0, false},
    {MT, I, Fb::Neg,  W,  0, false}, {MT, I, Fb::Zero, W, 0, false},
    {MT, W, Fb::Pos,  I,  0, false}, {MT, W, Fb::Neu,  I, 0, false},
    {MT, W, Fb::Neg,  R, -1, false}, {MT, W, Fb::Zero, R, -1, false},
    {MT, R, Fb::Pos,  I,  0, false}, {MT, R, Fb::Neu,  I, 0, false},
    {MT, R, Fb::Neg,  I, +1, true},  {MT, R, Fb::Zero, I, +1, true},

    // Target tuner: Pos means above the band, Neg below it.
    {TT, I, Fb::Pos,  R,  0, false}, {TT, I, Fb::Neu,  I, 0, false},
    {TT, I, Fb::Neg,  R,  0, false}, {TT, I, Fb::Zero, R, 0, false},
    {TT, R, Fb::Pos,  I, -1, false}, {TT, R, Fb::Neu,  I, 0, false},
    {TT, R, Fb::Neg,  I, +1, false}, {TT, R, Fb::Zero, I, +1, false},
};
// clang-format on

const std::set<std::pair<FsmState, FsmState>> kEdges{
    {I, I}, {I, W}, {W, I}, {W, R}, {R, I}};
const std::set<std::pair<FsmState, FsmState>> kTargetEdges{{I, I}, {I, R}, {R, I}};

constexpr Bytes kLeft = 5'000'000;
constexpr double kRef = 100e6, kTarget = 400e6, kPast = 100.0;

TransferPlan oracle_plan(int channels) {
    std::vector<DatasetPartition> parts;
    parts.emplace_back(std::vector<FileSpec>{FileSpec(kLeft, 0)});
    TransferPlan plan{std::move(parts), channels,
                      CpuConfig::at_min_freq(CpuLimits(1, 1e9, 1e9, 0), 1)};
    allocate_channels(plan.partitions, channels);
    return plan;
}

struct Probe {
    Measurement m;
    double anchor_value;   // what the reference becomes when re-anchored
};

Probe probe(SlaKind tuner, Fb fb, TunerState& st) {
    if (fb == Fb::Zero) {
        return {Measurement::from(1.0, 0, 10.0, 0.0), 0.0};
    }
    if (tuner == ME) {
        // 8 Mbit/s at 10 W over 1 s with kLeft to go: 10 J spent now, 50 J ahead.
        const double estimate = fb == Fb::Pos ? 80.0 : fb == Fb::Neu ? 100.0 : 120.0;
        st.energy.e_spent = estimate - 60.0;
        return {Measurement::from(1.0, 1'000'000, 10.0, 0.5), estimate};
    }
    const double ref = tuner == MT ? kRef : kTarget;
    const double bps = fb == Fb::Pos ? 1.2 * ref : fb == Fb::Neu ? ref : 0.8 * ref;
    const auto m = Measurement::from(1.0, static_cast<Bytes>(bps / 8.0), 10.0, 0.5);
    return {m, m.avg_tput};
}

Verdict fsm_oracle() {
    int cases = 0, mismatches = 0;
    std::string first;
    auto miss = [&](const std::string& what) {
        if (mismatches++ == 0) first = what;
    };

    const int max_ch = 8;
    NetworkProfile net(1e9, 0.036, 1e6, max_ch);
    for (const Row& row : kTable) {
        for (int delta : {1, 2}) {
            for (int ch : {1, 2, 5, max_ch - 1, max_ch}) {
                ++cases;
                TunerConfig cfg;
                cfg.delta_ch = delta;
                TunerState st;
                st.fsm = row.from;
                st.ref_tput = kRef;
                st.has_e_past = true;
                st.energy.e_past = kPast;
                const Probe p = probe(row.tuner, row.fb, st);
                auto plan = oracle_plan(ch);

                StepOutcome out;
                switch (row.tuner) {
                    case ME: out = min_energy_step(st, plan, p.m, cfg, net); break;
                    case MT: out = max_tput_step(st, plan, p.m, cfg, net); break;
                    case TT: out = target_tput_step(st, plan, p.m, cfg, net, kTarget); break;
                }

                const int want_ch = std::clamp(ch + row.dir * delta, 1, max_ch);
                const double before = row.tuner == ME ? kPast : kRef;
                const double after = row.tuner == ME ? st.energy.e_past : st.ref_tput;
                const double want_ref =
                    row.tuner == TT ? kRef : (row.anchor ? p.anchor_value : before);
                const auto& edges = row.tuner == TT ? kTargetEdges : kEdges;

                std::ostringstream id;
                id << to_string(row.tuner) << " " << to_string(row.from) << " fb"
                   << static_cast<int>(row.fb) << " ch" << ch << " d" << delta;
                if (out.new_state != row.to || st.fsm != row.to) miss(id.str() + ": state");
                if (plan.num_channels != want_ch) miss(id.str() + ": numCh");
                if (out.num_ch_delta != want_ch - ch) miss(id.str() + ": delta");
                if (std::abs(after - want_ref) > 1e-6 * std::max(1.0, want_ref)) {
                    miss(id.str() + ": reference");
                }
                if (!edges.count({row.from, out.new_state})) miss(id.str() + ": edge");
            }
        }
    }

    // Stepping from a state a tuner never occupies is refused.
    for (SlaKind tuner : {ME, MT, TT}) {
        for (FsmState s : {FsmState::SlowStart, W}) {
            if (tuner != TT && s == W) continue;
            ++cases;
            TunerState st;
            st.fsm = s;
            st.ref_tput = kRef;
            auto plan = oracle_plan(4);
            const auto m = Measurement::from(1.0, 1'000'000, 10.0, 0.5);
            bool refused = false;
            try {
                switch (tuner) {
                    case ME: min_energy_step(st, plan, m, {}, net); break;
                    case MT: max_tput_step(st, plan, m, {}, net); break;
                    case TT: target_tput_step(st, plan, m, {}, net, kTarget); break;
                }
            } catch (const ValidationError&) {
                refused = true;
            }
            if (!refused) miss(std::string(to_string(tuner)) + " accepted " +
                               std::string(to_string(s)));
        }
    }
    return {mismatches == 0, fmt("%d cases, %d mismatches%s%s", cases, mismatches,
                                 first.empty() ? "" : "; first: ", first.c_str())};
}

// ------------------------------------------------------------------ 3

Verdict convergence() {
    const Scenario s = scenario("convergence");
    const auto run = run_scenario(s);
    const double bw = s.net.bandwidth();
    const int knee = s.knee_channels.value_or(0);
    long reached = -1;
    double best = 0.0;
    for (std::size_t end = 10; end <= std::min<std::size_t>(30, run.trace.size()); ++end) {
        const double ma = mean_tput(run.trace, end - 10, end);
        best = std::max(best, ma);
        if (reached < 0 && ma >= 0.9 * bw) reached = static_cast<long>(end);
    }
    const int final_ch = run.summary.final_num_ch;
    const bool ok = reached > 0 && final_ch <= knee + 2;
    return {ok, fmt("10-tick MA reached %.1f%% of bandwidth by tick %ld; final numCh %d "
                    "(limit %d)",
                    100.0 * best / bw, reached, final_ch, knee + 2)};
}

// ------------------------------------------------------------------ 4

Verdict target_adherence() {
    bool ok = true;
    std::ostringstream d;
    for (int pct : {20, 40, 60, 80}) {
        const Scenario s = scenario("target_" + std::to_string(pct));
        const auto run = run_scenario(s);
        const double target = *s.sla.target_tput;
        const std::size_t n = run.trace.size();
        const double got = mean_tput(run.trace, n >= 20 ? n - 20 : 0, n);
        const double err = (got - target) / target;
        ok &= std::abs(err) <= 0.10 && !run.summary.aborted;
        d << pct << "%: " << fmt("%.1f Mbps (%+.1f%%)", got / 1e6, 100 * err) << "; ";
    }
    return {ok, d.str()};
}

// ------------------------------------------------------------------ 5

Verdict energy_ordering() {
    Scenario s = scenario("energy_order");
    s.sla = SlaPolicy::min_energy();
    const auto me = run_scenario(s).summary;
    s.sla = SlaPolicy::max_throughput();
    const auto mt = run_scenario(s).summary;
    const auto fixed = run_scenario(scenario("energy_order_fixed")).summary;
    const bool ok = me.total_energy_j <= mt.total_energy_j &&
                    mt.total_energy_j <= fixed.total_energy_j &&
                    me.mean_num_ch <= mt.mean_num_ch;
    return {ok, fmt("energy ME %.0f J, EEMT %.0f J, FIXED %.0f J; mean numCh ME %.2f, EEMT %.2f",
                    me.total_energy_j, mt.total_energy_j, fixed.total_energy_j, me.mean_num_ch,
                    mt.mean_num_ch)};
}

// ------------------------------------------------------------------ 6

Verdict scaling_ablation() {
    const auto scaled = run_scenario(scenario("scaling")).summary;
    const auto pinned = run_scenario(scenario("scaling_pinned")).summary;
    const double saving = 1.0 - scaled.total_energy_j / pinned.total_energy_j;
    return {saving >= 0.10, fmt("load control %.0f J vs pinned %.0f J: %.1f%% less",
                                scaled.total_energy_j, pinned.total_energy_j, 100 * saving)};
}

// ------------------------------------------------------------------ 7

Verdict bandwidth_drop() {
    const Scenario s = scenario("bandwidth_drop");
    const auto run = run_scenario(s);
    const auto& rows = run.trace;
    const double when = s.events.at(0).time;
    const double new_bw = s.events.at(0).bandwidth;

    // First interval simulated at the reduced rate.
    std::size_t e = 0;
    while (e < rows.size() && rows[e].time_s - 1e-9 <= when) ++e;
    if (e >= rows.size()) return {false, "transfer finished before the event"};

    long seen_at = -1;
    for (std::size_t i = e; i + 3 < rows.size() && i < e + 5; ++i) {
        if (rows[i].state == I && rows[i + 1].state == W && rows[i + 2].state == R &&
            rows[i + 3].state == I && i + 3 < e + 5) {
            seen_at = static_cast<long>(i - e);
            break;
        }
    }
    bool bounds = true;
    for (const auto& r : rows) bounds &= r.num_ch >= 1 && r.num_ch <= s.net.max_channels();
    const double after = mean_tput(rows, e + 10, e + 30);
    const bool ok = seen_at >= 0 && bounds && after >= 0.85 * new_bw;
    return {ok, fmt("cycle %s%ld timeouts after the cut; numCh bounds %s; ticks +10..+30 at "
                    "%.1f%% of new bandwidth",
                    seen_at >= 0 ? "completes " : "missing ", seen_at >= 0 ? seen_at + 3 : -1,
                    bounds ? "held" : "violated", 100 * after / new_bw)};
}

// ------------------------------------------------------------------ 8

Verdict invariants() {
    bool ok = true;
    std::ostringstream d;
    for (const auto& r : checks::all_properties(20261015, 1000)) {
        ok &= r.ok();
        d << r.name << " " << r.cases - r.failures << "/" << r.cases;
        if (!r.first_failure.empty()) d << " (" << r.first_failure << ")";
        d << "; ";
    }
    return {ok, d.str()};
}

// ------------------------------------------------------------------ 9

std::string trace_bytes(const Scenario& s, const fs::path& path) {
    emit_trace(run_scenario(s).trace, path.string());
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

Verdict determinism() {
    const auto dir = fs::temp_directory_path() / "eetune_acceptance";
    fs::create_directories(dir);
    std::vector<Scenario> set;
    for (const char* name : {"convergence", "target_40", "bandwidth_drop", "scaling",
                             "energy_order_fixed"}) {
        set.push_back(scenario(name));
    }
    Scenario me = scenario("energy_order");
    me.sla = SlaPolicy::min_energy();
    set.push_back(me);

    int same = 0;
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto a = trace_bytes(set[i], dir / ("a" + std::to_string(i) + ".csv"));
        const auto b = trace_bytes(set[i], dir / ("b" + std::to_string(i) + ".csv"));
        same += !a.empty() && a == b;
    }
    return {same == static_cast<int>(set.size()),
            fmt("%d/%zu scenarios produced byte-identical traces", same, set.size())};
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Verdict()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "table fidelity", 1.0, table_fidelity},
        {2, "FSM oracle equivalence", 1.0, fsm_oracle},
        {3, "max-throughput convergence", 5.0, convergence},
        {4, "target adherence", 10.0, target_adherence},
        {5, "energy ordering", 10.0, energy_ordering},
        {6, "scaling ablation", 10.0, scaling_ablation},
        {7, "bandwidth-drop recovery", 5.0, bandwidth_drop},
        {8, "invariant suite", 30.0, invariants},
        {9, "determinism", 5.0, determinism},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.budget_s;
        const bool pass = v.pass && in_time;
        failed += pass ? 0 : 1;
        std::printf("%s criterion %d (%s): %s [%.2f s of %.0f s%s]\n", pass ? "PASS" : "FAIL",
                    c.id, c.name, v.detail.c_str(), secs, c.budget_s,
                    in_time ? "" : ", over budget");
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
