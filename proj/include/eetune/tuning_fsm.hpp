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

// SLA tuners. All three share one state machine:
//
//   SLOW_START --ch *= bw/avgTput--> INCREASE
//   INCREASE   --positive--> INCREASE (+dCh)    --neutral--> INCREASE
//   INCREASE   --negative--> WARNING
//   WARNING    --positive|neutral--> INCREASE   --negative--> RECOVERY (-dCh)
//   RECOVERY   --positive|neutral--> INCREASE   --negative--> INCREASE (+dCh)
//
// The target-throughput tuner skips WARNING: any out-of-band reading in
// INCREASE moves to RECOVERY, and RECOVERY steers one step toward the
// target before returning to INCREASE.
//
// Feedback is an energy estimate for the minimum-energy tuner and the last
// interval's throughput for the other two. Each step function mutates the
// tuner state and the plan it is given and nothing else.

#include <span>
#include <string_view>

#include "eetune/core_model.hpp"

namespace eetune {

enum class Feedback { Positive, Neutral, Negative };

std::string_view to_string(Feedback f) noexcept;

struct TunerState {
    FsmState fsm = FsmState::SlowStart;
    double ref_tput = 0.0;
    EnergyEstimate energy;
    bool has_e_past = false;
    int prev_num_ch = 1;
};

struct StepOutcome {
    FsmState new_state = FsmState::Increase;
    int num_ch_delta = 0;
    Feedback feedback = Feedback::Neutral;
    bool done = false;
};

/// Pure classification against the (1-alpha, 1+beta) band around the
/// policy's reference: refTput, targetTput or e_past. For the energy policy
/// `state.energy` must already hold the current estimate (see
/// EnergyEstimate::record and refresh). Nothing measured is always NEGATIVE.
///
/// For the target policy, readings above the band are POSITIVE and readings
/// below it NEGATIVE; the target tuner treats both as "out of band".
Feedback classify_feedback(const Measurement& m, const TunerState& state, const TunerConfig& cfg,
                           const SlaPolicy& policy);

StepOutcome min_energy_step(TunerState& state, TransferPlan& plan, const Measurement& m,
                            const TunerConfig& cfg, const NetworkProfile& net);

StepOutcome max_tput_step(TunerState& state, TransferPlan& plan, const Measurement& m,
                          const TunerConfig& cfg, const NetworkProfile& net);

StepOutcome target_tput_step(TunerState& state, TransferPlan& plan, const Measurement& m,
                             const TunerConfig& cfg, const NetworkProfile& net,
                             double target_tput);

/// Owns one tuner's state and dispatches on the SLA policy.
class Tuner {
public:
    Tuner(SlaPolicy policy, TunerConfig cfg);

    const SlaPolicy& policy() const noexcept { return policy_; }
    const TunerConfig& config() const noexcept { return cfg_; }
    const TunerState& state() const noexcept { return state_; }

    /// Leaves SLOW_START. refTput becomes the mean slow-start throughput and
    /// slow-start energy counts as spent.
    void finish_slow_start(std::span<const Measurement> slow_start);

    StepOutcome step(TransferPlan& plan, const Measurement& m, const NetworkProfile& net);

private:
    SlaPolicy policy_;
    TunerConfig cfg_;
    TunerState state_;
};

}  // namespace eetune
