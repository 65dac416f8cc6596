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

#include "eetune/tuning_fsm.hpp"

#include <algorithm>
#include <numeric>

#include "eetune/heuristic_init.hpp"

namespace eetune {

namespace {

int add_channels(TransferPlan& plan, int delta, const NetworkProfile& net) {
    const int before = plan.num_channels;
    plan.num_channels = clamp_channels(static_cast<long long>(before) + delta, net);
    return plan.num_channels - before;
}

StepOutcome finish(TunerState& state, TransferPlan& plan, FsmState next, int delta, Feedback fb) {
    state.fsm = next;
    const bool active = allocate_channels(plan.partitions, plan.num_channels);
    return {next, delta, fb, !active};
}

void require_state(const TunerState& state, bool ok, const char* tuner) {
    if (!ok) {
        throw ValidationError("tuner.state", std::string(tuner) + " cannot step from " +
                                                 std::string(to_string(state.fsm)));
    }
}

Feedback band(double value, double reference, const TunerConfig& cfg, bool lower_is_better) {
    if (lower_is_better) {
        if (value < (1.0 - cfg.alpha) * reference) return Feedback::Positive;
        if (value > (1.0 + cfg.beta) * reference) return Feedback::Negative;
        return Feedback::Neutral;
    }
    if (value > (1.0 + cfg.beta) * reference) return Feedback::Positive;
    if (value < (1.0 - cfg.alpha) * reference) return Feedback::Negative;
    return Feedback::Neutral;
}

}  // namespace

std::string_view to_string(Feedback f) noexcept {
    switch (f) {
        case Feedback::Positive: return "POSITIVE";
        case Feedback::Neutral: return "NEUTRAL";
        case Feedback::Negative: return "NEGATIVE";
    }
    return "?";
}

Feedback classify_feedback(const Measurement& m, const TunerState& state, const TunerConfig& cfg,
                           const SlaPolicy& policy) {
    if (!(m.avg_tput > 0.0)) return Feedback::Negative;
    switch (policy.kind) {
        case SlaKind::MinEnergy:
            return band(state.energy.total(), state.energy.e_past, cfg, true);
        case SlaKind::MaxThroughput:
            return band(m.avg_tput, state.ref_tput, cfg, false);
        case SlaKind::TargetThroughput:
            return band(m.avg_tput, policy.target_tput.value_or(0.0), cfg, false);
    }
    return Feedback::Neutral;
}

StepOutcome min_energy_step(TunerState& state, TransferPlan& plan, const Measurement& m,
                            const TunerConfig& cfg, const NetworkProfile& net) {
    if (plan.done()) return {state.fsm, 0, Feedback::Neutral, true};
    require_state(state, state.fsm != FsmState::SlowStart, "min_energy_step");

    const bool measured = m.avg_tput > 0.0;
    state.energy.record(m);
    if (measured) {
        state.energy.refresh(m, plan.remaining_bytes());
        if (!state.has_e_past) {
            state.energy.e_past = state.energy.total();
            state.has_e_past = true;
        }
    }
    const Feedback fb = classify_feedback(m, state, cfg, SlaPolicy::min_energy());
    auto accept = [&] {
        if (measured) state.energy.e_past = state.energy.total();
    };

    switch (state.fsm) {
        case FsmState::Increase:
            if (fb == Feedback::Positive) {
                const int d = add_channels(plan, cfg.delta_ch, net);
                accept();
                return finish(state, plan, FsmState::Increase, d, fb);
            }
            if (fb == Feedback::Negative) return finish(state, plan, FsmState::Warning, 0, fb);
            return finish(state, plan, FsmState::Increase, 0, fb);

        case FsmState::Warning:
            if (fb != Feedback::Negative) return finish(state, plan, FsmState::Increase, 0, fb);
            state.prev_num_ch = plan.num_channels;
            return finish(state, plan, FsmState::Recovery, add_channels(plan, -cfg.delta_ch, net),
                          fb);

        case FsmState::Recovery: {
            int d = 0;
            if (fb == Feedback::Negative) d = add_channels(plan, cfg.delta_ch, net);
            accept();
            return finish(state, plan, FsmState::Increase, d, fb);
        }

        case FsmState::SlowStart: break;
    }
    return {state.fsm, 0, fb, false};
}

StepOutcome max_tput_step(TunerState& state, TransferPlan& plan, const Measurement& m,
                          const TunerConfig& cfg, const NetworkProfile& net) {
    if (plan.done()) return {state.fsm, 0, Feedback::Neutral, true};
    require_state(state, state.fsm != FsmState::SlowStart, "max_tput_step");

    const Feedback fb = classify_feedback(m, state, cfg, SlaPolicy::max_throughput());

    switch (state.fsm) {
        case FsmState::Increase:
            if (fb == Feedback::Positive) {
                const int d = add_channels(plan, cfg.delta_ch, net);
                state.ref_tput = m.avg_tput;
                return finish(state, plan, FsmState::Increase, d, fb);
            }
            if (fb == Feedback::Negative) return finish(state, plan, FsmState::Warning, 0, fb);
            return finish(state, plan, FsmState::Increase, 0, fb);

        case FsmState::Warning:
            if (fb != Feedback::Negative) return finish(state, plan, FsmState::Increase, 0, fb);
            state.prev_num_ch = plan.num_channels;
            return finish(state, plan, FsmState::Recovery, add_channels(plan, -cfg.delta_ch, net),
                          fb);

        case FsmState::Recovery:
            if (fb != Feedback::Negative) return finish(state, plan, FsmState::Increase, 0, fb);
            {
                // Bandwidth dropped: restore and re-anchor on what the link gives now.
                const int d = add_channels(plan, cfg.delta_ch, net);
                state.ref_tput = m.avg_tput;
                return finish(state, plan, FsmState::Increase, d, fb);
            }

        case FsmState::SlowStart: break;
    }
    return {state.fsm, 0, fb, false};
}

StepOutcome target_tput_step(TunerState& state, TransferPlan& plan, const Measurement& m,
                             const TunerConfig& cfg, const NetworkProfile& net,
                             double target_tput) {
    if (plan.done()) return {state.fsm, 0, Feedback::Neutral, true};
    require_state(state, state.fsm == FsmState::Increase || state.fsm == FsmState::Recovery,
                  "target_tput_step");

    const Feedback fb = classify_feedback(m, state, cfg, SlaPolicy::target(target_tput));

    if (state.fsm == FsmState::Increase) {
        const FsmState next = fb == Feedback::Neutral ? FsmState::Increase : FsmState::Recovery;
        return finish(state, plan, next, 0, fb);
    }

    int d = 0;
    if (fb == Feedback::Positive) {
        state.prev_num_ch = plan.num_channels;
        d = add_channels(plan, -cfg.delta_ch, net);
    } else if (fb == Feedback::Negative) {
        state.prev_num_ch = plan.num_channels;
        d = add_channels(plan, cfg.delta_ch, net);
    }
    return finish(state, plan, FsmState::Increase, d, fb);
}

// --------------------------------------------------------------------------

Tuner::Tuner(SlaPolicy policy, TunerConfig cfg) : policy_(policy), cfg_(cfg) {
    policy_.validate();
    cfg_.validate();
}

void Tuner::finish_slow_start(std::span<const Measurement> slow_start) {
    state_.fsm = FsmState::Increase;
    if (slow_start.empty()) return;

    const double sum = std::accumulate(slow_start.begin(), slow_start.end(), 0.0,
                                       [](double acc, const Measurement& m) {
                                           return acc + m.avg_tput;
                                       });
    state_.ref_tput = sum / static_cast<double>(slow_start.size());

    // e_past is taken on the first tuner step, under the corrected channel count.
    for (const auto& m : slow_start) state_.energy.record(m);
}

StepOutcome Tuner::step(TransferPlan& plan, const Measurement& m, const NetworkProfile& net) {
    state_.prev_num_ch = std::clamp(state_.prev_num_ch, 1, net.max_channels());
    switch (policy_.kind) {
        case SlaKind::MinEnergy: return min_energy_step(state_, plan, m, cfg_, net);
        case SlaKind::MaxThroughput: return max_tput_step(state_, plan, m, cfg_, net);
        case SlaKind::TargetThroughput:
            return target_tput_step(state_, plan, m, cfg_, net, *policy_.target_tput);
    }
    return {};
}

}  // namespace eetune
