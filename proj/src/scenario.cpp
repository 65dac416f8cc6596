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

#include "eetune/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "eetune/heuristic_init.hpp"

namespace eetune {

// ---------------------------------------------------------------- presets

namespace {

// Client-side CPU and power figures are simulation defaults, not measurements.
constexpr std::array kTestbeds{
    TestbedPreset{"chameleon", 10e9, 0.032, 40e6, 2e6, 64, 12, 1.2e9, 2.4e9, 5,
                  PowerParams{45.0, 2.0, 1.5, 1.0}},
    TestbedPreset{"cloudlab", 1e9, 0.036, 4.5e6, 225e3, 32, 8, 1.2e9, 2.4e9, 5,
                  PowerParams{30.0, 2.0, 1.5, 1.0}},
    TestbedPreset{"didclab", 1e9, 0.044, 5.5e6, 275e3, 32, 4, 1.6e9, 2.8e9, 5,
                  PowerParams{30.0, 2.0, 1.5, 1.0}},
};

constexpr std::array kDatasets{
    DatasetPreset{"small", 20'000, 1.94e9, 101.92e3, 29.06e3},
    DatasetPreset{"medium", 5'000, 11.70e9, 2.40e6, 0.27e6},
    DatasetPreset{"large", 128, 27.85e9, 222.78e6, 15.19e6},
};

}  // namespace

NetworkProfile TestbedPreset::network() const {
    return {bandwidth, rtt, default_window, max_channels};
}

CpuLimits TestbedPreset::cpu_limits() const {
    return CpuLimits::with_levels(num_cores, min_freq, max_freq, freq_levels);
}

std::span<const TestbedPreset> testbed_presets() noexcept { return kTestbeds; }
std::span<const DatasetPreset> dataset_presets() noexcept { return kDatasets; }

const TestbedPreset& find_testbed(std::string_view name) {
    for (const auto& t : kTestbeds) {
        if (t.name == name) return t;
    }
    throw ValidationError("network.preset", "unknown testbed '" + std::string(name) + "'");
}

std::vector<DatasetPreset> expand_dataset(std::string_view name) {
    if (name == "mixed") return {kDatasets.begin(), kDatasets.end()};
    for (const auto& d : kDatasets) {
        if (d.name == name) return {d};
    }
    throw ValidationError("datasets.preset", "unknown dataset '" + std::string(name) + "'");
}

std::vector<Bytes> synthesize_sizes(const DatasetPreset& preset, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(preset.avg_file_bytes, preset.stddev_bytes);

    std::vector<double> raw(preset.num_files);
    double sum = 0.0;
    for (auto& r : raw) {
        r = std::max(1.0, dist(rng));
        sum += r;
    }

    const auto total = static_cast<Bytes>(std::llround(preset.total_bytes));
    const double scale = static_cast<double>(total) / sum;
    std::vector<Bytes> sizes(raw.size());
    Bytes acc = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        sizes[i] = std::max<Bytes>(1, static_cast<Bytes>(std::floor(raw[i] * scale)));
        acc += sizes[i];
    }
    // Spread the rounding residue one byte at a time.
    for (std::size_t i = 0; acc < total; i = (i + 1) % sizes.size(), ++acc) ++sizes[i];
    for (std::size_t i = 0; acc > total; i = (i + 1) % sizes.size()) {
        if (sizes[i] > 1) {
            --sizes[i];
            --acc;
        }
    }
    return sizes;
}

// --------------------------------------------------------------- scenario

void Scenario::validate() const {
    if (datasets.empty()) throw ValidationError("datasets", "at least one dataset is required");
    for (std::size_t i = 0; i < datasets.size(); ++i) {
        const auto& d = datasets[i];
        const std::string path = "datasets[" + std::to_string(i) + "]";
        if (d.preset.empty() == d.sizes.empty()) {
            throw ValidationError(path, "exactly one of 'preset' or 'sizes' is required");
        }
        if (!d.preset.empty()) expand_dataset(d.preset);
        for (Bytes s : d.sizes) {
            if (s == 0) throw ValidationError(path + ".sizes", "file sizes must be > 0");
        }
    }
    for (std::size_t i = 1; i < bands.size(); ++i) {
        if (bands[i] <= bands[i - 1]) {
            throw ValidationError("partition_bands", "thresholds must be strictly increasing");
        }
    }
    sla.validate();
    tuner.validate();
    thresholds.validate();
    if (fixed_channels < 0 || fixed_channels > net.max_channels()) {
        throw ValidationError("baseline.channels", "must be in [0, max_channels]");
    }
    if (max_ticks < 1) throw ValidationError("sim.max_ticks", "must be >= 1");
    sim_config().validate();
}

std::string Scenario::policy_label() const {
    switch (baseline) {
        case BaselineKind::Static: return "STATIC";
        case BaselineKind::FixedChannels: return "FIXED";
        case BaselineKind::None: break;
    }
    switch (sla.kind) {
        case SlaKind::MinEnergy: return "ME";
        case SlaKind::MaxThroughput: return "EEMT";
        case SlaKind::TargetThroughput: return "EETT";
    }
    return "?";
}

SimConfig Scenario::sim_config() const {
    CongestionParams congestion{knee_channels.value_or(initial_channel_count(net)), penalty};
    return SimConfig{net, cpu, events, noise_stddev, seed, power, congestion, tick, c_work};
}

Scenario make_preset_scenario(std::string_view testbed, std::vector<std::string> datasets,
                              SlaPolicy sla, std::uint64_t seed) {
    const auto& tb = find_testbed(testbed);
    Scenario s;
    s.id = std::string(testbed);
    s.testbed = std::string(testbed);
    s.net = tb.network();
    s.cpu = tb.cpu_limits();
    s.power = tb.power;
    for (auto& d : datasets) {
        s.id += "-" + d;
        s.datasets.push_back(DatasetSpec{std::move(d), {}});
    }
    s.sla = sla;
    s.seed = seed;
    return s;
}

std::vector<FileSpec> synthesize_files(const Scenario& s) {
    std::vector<FileSpec> files;
    std::uint64_t id = 0;
    std::uint64_t stream = 0;
    for (const auto& d : s.datasets) {
        if (!d.preset.empty()) {
            for (const auto& p : expand_dataset(d.preset)) {
                // Independent stream per population, derived from the scenario seed.
                const std::uint64_t sub = s.seed ^ (0x9E3779B97F4A7C15ULL * ++stream);
                for (Bytes b : synthesize_sizes(p, sub)) files.emplace_back(b, id++);
            }
        }
        for (Bytes b : d.sizes) files.emplace_back(b, id++);
    }
    return files;
}

// ------------------------------------------------------------------ YAML

namespace {

class Reader {
public:
    Reader(const YAML::Node& node, std::string path) : node_(node), path_(std::move(path)) {
        if (node_ && !node_.IsMap()) throw ValidationError(path_, "expected a mapping");
    }

    // Every key in the mapping must be one of `allowed`.
    void only(std::initializer_list<std::string_view> allowed) const {
        if (!node_) return;
        for (const auto& kv : node_) {
            const auto key = kv.first.as<std::string>();
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                throw ValidationError(join(key), "unknown key");
            }
        }
    }

    bool has(const char* key) const { return node_ && node_[key]; }
    YAML::Node raw(const char* key) const { return node_ ? node_[key] : YAML::Node(); }
    std::string join(std::string_view key) const {
        return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
    }

    template <typename T>
    void get(const char* key, T& out) const {
        if (!has(key)) return;
        try {
            out = node_[key].as<T>();
        } catch (const YAML::Exception&) {
            throw ValidationError(join(key), "invalid value");
        }
    }

private:
    YAML::Node node_;
    std::string path_;
};

std::vector<Bytes> read_sizes(const YAML::Node& node, const std::string& path) {
    if (!node.IsSequence()) throw ValidationError(path, "expected a list");
    std::vector<Bytes> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
        double v = 0;
        try {
            v = node[i].as<double>();
        } catch (const YAML::Exception&) {
            throw ValidationError(path + "[" + std::to_string(i) + "]", "expected a number");
        }
        if (!(v >= 1)) throw ValidationError(path + "[" + std::to_string(i) + "]", "must be >= 1");
        out.push_back(static_cast<Bytes>(std::llround(v)));
    }
    return out;
}

Scenario from_yaml(const YAML::Node& root) {
    Reader top(root, "");
    top.only({"id", "seed", "network", "cpu", "datasets", "partition_bands", "sla", "tuner",
              "load_control", "baseline", "power", "congestion", "events", "sim"});

    Scenario s;
    top.get("id", s.id);
    top.get("seed", s.seed);

    // network: preset first, explicit fields override it.
    Reader net(top.raw("network"), "network");
    net.only({"preset", "bandwidth_bps", "rtt_s", "avg_window_bytes", "max_channels"});
    net.get("preset", s.testbed);
    const auto& tb = find_testbed(s.testbed);
    double bw = tb.bandwidth, rtt = tb.rtt, win = tb.default_window;
    int max_ch = tb.max_channels;
    net.get("bandwidth_bps", bw);
    net.get("rtt_s", rtt);
    net.get("avg_window_bytes", win);
    net.get("max_channels", max_ch);
    s.net = NetworkProfile(bw, rtt, win, max_ch);
    s.power = tb.power;

    Reader cpu(top.raw("cpu"), "cpu");
    cpu.only({"num_cores", "min_freq_hz", "max_freq_hz", "freq_levels"});
    int cores = tb.num_cores, levels = tb.freq_levels;
    double fmin = tb.min_freq, fmax = tb.max_freq;
    cpu.get("num_cores", cores);
    cpu.get("min_freq_hz", fmin);
    cpu.get("max_freq_hz", fmax);
    cpu.get("freq_levels", levels);
    s.cpu = CpuLimits::with_levels(cores, fmin, fmax, levels);

    if (top.has("datasets")) {
        const auto list = top.raw("datasets");
        if (!list.IsSequence()) throw ValidationError("datasets", "expected a list");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string path = "datasets[" + std::to_string(i) + "]";
            Reader d(list[i], path);
            d.only({"preset", "sizes"});
            DatasetSpec spec;
            d.get("preset", spec.preset);
            if (d.has("sizes")) spec.sizes = read_sizes(d.raw("sizes"), path + ".sizes");
            s.datasets.push_back(std::move(spec));
        }
    }
    if (top.has("partition_bands")) s.bands = read_sizes(top.raw("partition_bands"), "partition_bands");

    Reader sla(top.raw("sla"), "sla");
    sla.only({"policy", "target_tput_bps", "target_fraction"});
    std::string policy = "max_throughput";
    sla.get("policy", policy);
    s.sla.kind = parse_sla_kind(policy);
    s.sla.target_tput.reset();
    if (sla.has("target_tput_bps")) {
        double t = 0;
        sla.get("target_tput_bps", t);
        s.sla.target_tput = t;
    } else if (sla.has("target_fraction")) {
        double f = 0;
        sla.get("target_fraction", f);
        s.sla.target_tput = f * s.net.bandwidth();
    }

    Reader tuner(top.raw("tuner"), "tuner");
    tuner.only({"alpha", "beta", "delta_ch", "timeout_s", "slow_start_rounds"});
    tuner.get("alpha", s.tuner.alpha);
    tuner.get("beta", s.tuner.beta);
    tuner.get("delta_ch", s.tuner.delta_ch);
    tuner.get("timeout_s", s.tuner.timeout);
    tuner.get("slow_start_rounds", s.tuner.slow_start_rounds);

    Reader lc(top.raw("load_control"), "load_control");
    lc.only({"enabled", "min_load", "max_load", "pin_max"});
    lc.get("enabled", s.load_control);
    lc.get("min_load", s.thresholds.min_load);
    lc.get("max_load", s.thresholds.max_load);
    lc.get("pin_max", s.pin_max_cpu);

    Reader base(top.raw("baseline"), "baseline");
    base.only({"kind", "channels"});
    std::string kind = "none";
    base.get("kind", kind);
    if (kind == "none") {
        s.baseline = BaselineKind::None;
    } else if (kind == "static") {
        s.baseline = BaselineKind::Static;
    } else if (kind == "fixed_channels") {
        s.baseline = BaselineKind::FixedChannels;
    } else {
        throw ValidationError("baseline.kind", "expected none, static or fixed_channels");
    }
    base.get("channels", s.fixed_channels);

    Reader pw(top.raw("power"), "power");
    pw.only({"p_idle_w", "p_core_base_w", "k_freq_w_per_ghz3", "util_exponent", "c_work"});
    pw.get("p_idle_w", s.power.p_idle);
    pw.get("p_core_base_w", s.power.p_core_base);
    pw.get("k_freq_w_per_ghz3", s.power.k_freq);
    pw.get("util_exponent", s.power.util_exponent);
    pw.get("c_work", s.c_work);

    Reader cg(top.raw("congestion"), "congestion");
    cg.only({"knee_channels", "penalty"});
    if (cg.has("knee_channels")) {
        int knee = 0;
        cg.get("knee_channels", knee);
        s.knee_channels = knee;
    }
    cg.get("penalty", s.penalty);

    if (top.has("events")) {
        const auto list = top.raw("events");
        if (!list.IsSequence()) throw ValidationError("events", "expected a list");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string path = "events[" + std::to_string(i) + "]";
            Reader e(list[i], path);
            e.only({"time_s", "bandwidth_bps", "bandwidth_fraction"});
            if (!e.has("time_s")) throw ValidationError(path + ".time_s", "required");
            BandwidthEvent ev{0, 0};
            e.get("time_s", ev.time);
            if (e.has("bandwidth_bps")) {
                e.get("bandwidth_bps", ev.bandwidth);
            } else if (e.has("bandwidth_fraction")) {
                double f = 0;
                e.get("bandwidth_fraction", f);
                ev.bandwidth = f * s.net.bandwidth();
            } else {
                throw ValidationError(path, "one of bandwidth_bps or bandwidth_fraction required");
            }
            s.events.push_back(ev);
        }
    }

    Reader sim(top.raw("sim"), "sim");
    sim.only({"noise_stddev", "tick_s", "max_ticks"});
    sim.get("noise_stddev", s.noise_stddev);
    sim.get("tick_s", s.tick);
    sim.get("max_ticks", s.max_ticks);

    s.validate();
    return s;
}

}  // namespace

Scenario parse_scenario(std::string_view yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml_text));
    } catch (const YAML::Exception& e) {
        throw ValidationError("yaml", e.what());
    }
    if (!root.IsMap()) throw ValidationError("yaml", "scenario must be a mapping");
    return from_yaml(root);
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open scenario file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

}  // namespace eetune
