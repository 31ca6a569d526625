#pragma once

#include "cyberevo/kv_config.hpp"
#include "cyberevo/sim/actions.hpp"
#include "cyberevo/sim/rewards.hpp"
#include "cyberevo/sim/topology.hpp"

#include <array>
#include <string>

namespace cyberevo::sim {

/// Every tunable of the scenario. Defaults come from data/scenario.cfg.
struct ScenarioConfig {
    TopologyBounds bounds;
    int steps = 75;
    PhaseBoundaries phases;

    double exploit_prob_scanned = 0.8;
    double exploit_prob_unscanned = 0.3;
    double escalate_prob = 0.8;
    double phishing_prob = 0.02;
    double compromised_service_spawn_prob = 0.1;
    double decoy_trip_prob = 1.0;
    double aggressive_detect_prob = 1.0;
    double stealth_detect_prob = 0.25;
    double green_local_work_prob = 0.5;

    std::array<int, kRedActionCount> red_durations{};
    std::array<int, kBlueActionCount> blue_durations{};

    RewardTable rewards = RewardTable::standard();

    int duration(Side side, ActionId action) const;

    /// Throws on out-of-range probabilities, non-positive durations or
    /// inconsistent phase boundaries.
    void validate() const;

    static const ScenarioConfig& defaults();
    /// Applies `text` on top of the defaults. Unknown keys are rejected.
    static ScenarioConfig parse(std::string_view text, std::string_view origin = "<scenario>");
    static ScenarioConfig load(const std::string& path);
};

} // namespace cyberevo::sim
