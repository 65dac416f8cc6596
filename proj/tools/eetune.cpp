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

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eetune/harness.hpp"
#include "eetune/heuristic_init.hpp"
#include "eetune/kernels.hpp"

namespace fs = std::filesystem;
using namespace eetune;

namespace {

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::string out_dir = "runs";
    std::optional<long> max_ticks;
    bool no_load_control = false;
    std::string format = "csv";
    std::string policy;
};

Scenario prepare(const std::string& path, const RunOptions& opt) {
    Scenario s = load_scenario(path);
    if (opt.seed) s.seed = *opt.seed;
    if (opt.max_ticks) s.max_ticks = *opt.max_ticks;
    if (opt.no_load_control) s.load_control = false;
    if (!opt.policy.empty()) {
        const auto target = s.sla.target_tput;
        s.sla.kind = parse_sla_kind(opt.policy);
        s.sla.target_tput = target;
    }
    s.validate();
    return s;
}

// Writes trace + summary; returns the process exit code for this run.
int store(const Scenario& s, const RunResult& r, const RunOptions& opt) {
    fs::create_directories(opt.out_dir);
    const bool jsonl = opt.format == "jsonlines";
    const std::string stem = (fs::path(opt.out_dir) / (s.id + "__" + r.summary.policy)).string();
    emit_trace(r.trace, stem + (jsonl ? ".trace.jsonl" : ".trace.csv"),
               jsonl ? TraceFormat::JsonLines : TraceFormat::Csv);
    write_summary(r.summary, stem + ".summary.json");

    const auto& m = r.summary;
    std::cout << std::fixed << std::setprecision(2) << s.id << " [" << m.policy
              << "] energy=" << m.total_energy_j << " J  tput=" << m.avg_tput_bps / kMbps
              << " Mbps  time=" << m.transfer_time_s << " s  numCh=" << m.final_num_ch
              << (m.aborted ? "  ABORTED (max_ticks)" : "") << "\n  -> " << stem << ".*\n";
    return m.aborted ? 2 : 0;
}

Summary load_any(const std::string& path) {
    // A trace path resolves to the summary written next to it.
    std::string p = path;
    for (const char* ext : {".trace.csv", ".trace.jsonl"}) {
        const std::string e(ext);
        if (p.size() > e.size() && p.compare(p.size() - e.size(), e.size(), e) == 0) {
            p = p.substr(0, p.size() - e.size()) + ".summary.json";
        }
    }
    return read_summary(p);
}

void add_run_flags(CLI::App* cmd, RunOptions& opt) {
    cmd->add_option("--seed", opt.seed, "Override the scenario seed");
    cmd->add_option("--out-dir", opt.out_dir, "Directory for traces and summaries");
    cmd->add_option("--max-ticks", opt.max_ticks, "Abort after this many timeouts");
    cmd->add_flag("--no-load-control", opt.no_load_control, "Keep the CPU configuration fixed");
    cmd->add_option("--format", opt.format, "Trace format")
        ->check(CLI::IsMember({"csv", "jsonlines"}));
    cmd->add_option("--policy", opt.policy, "Override the SLA policy (ME, EEMT, EETT)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SLA-driven energy-efficient transfer tuning simulator"};
    app.require_subcommand(1);

    RunOptions opt;
    std::string scenario_path;
    auto* run = app.add_subcommand("run", "Run one scenario");
    run->add_option("scenario", scenario_path, "Scenario YAML file")->required();
    add_run_flags(run, opt);

    std::vector<std::string> batch_paths;
    auto* batch = app.add_subcommand("batch", "Run several scenarios in parallel");
    batch->add_option("scenarios", batch_paths, "Scenario YAML files")->required();
    add_run_flags(batch, opt);

    std::vector<std::string> compare_paths;
    std::string baseline;
    auto* compare = app.add_subcommand("compare", "Compare runs of one scenario");
    compare->add_option("runs", compare_paths, "Trace or summary files")->required();
    compare->add_option("--baseline", baseline, "Policy label used as the reference row");

    auto* presets = app.add_subcommand("presets", "Show built-in presets");
    auto* presets_list = presets->add_subcommand("list", "List testbed and dataset presets");
    presets->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const Scenario s = prepare(scenario_path, opt);
            return store(s, run_scenario(s), opt);
        }
        if (*batch) {
            std::vector<Scenario> scenarios;
            for (const auto& p : batch_paths) scenarios.push_back(prepare(p, opt));
            const auto results = par::run_batch(scenarios);
            int rc = 0;
            for (std::size_t i = 0; i < results.size(); ++i) {
                rc = std::max(rc, store(scenarios[i], results[i], opt));
            }
            return rc;
        }
        if (*compare) {
            std::vector<Summary> runs;
            for (const auto& p : compare_paths) runs.push_back(load_any(p));
            std::cout << format_comparison(compare_runs(runs, baseline));
            return 0;
        }
        if (*presets_list) {
            std::cout << "testbeds:\n";
            for (const auto& t : testbed_presets()) {
                const auto net = t.network();
                std::cout << "  " << std::left << std::setw(10) << t.name << std::right
                          << " bandwidth=" << t.bandwidth / kGbps << " Gbps  rtt=" << t.rtt * 1e3
                          << " ms  bdp=" << net.bdp() / kMB << " MB  window="
                          << t.default_window / kMB << " MB  channels="
                          << initial_channel_count(net) << "/" << t.max_channels
                          << "  cores=" << t.num_cores << "\n";
            }
            std::cout << "datasets:\n";
            for (const auto& d : dataset_presets()) {
                std::cout << "  " << std::left << std::setw(10) << d.name << std::right
                          << " files=" << d.num_files << "  total=" << d.total_bytes / kGB
                          << " GB  avg=" << d.avg_file_bytes / kMB << " MB  stddev="
                          << d.stddev_bytes / kMB << " MB\n";
            }
            std::cout << "  mixed      small + medium + large\n";
            return 0;
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
