#pragma once

#include "cyberevo/sim/episode.hpp"

namespace test_support {

using namespace cyberevo;
using namespace cyberevo::sim;

/// Uniformly random legal-shaped decisions: any action, any known host (blue:
/// any watched host), any zone.
class RandomPolicy final : public TeamPolicy {
  public:
    explicit RandomPolicy(Side side) : side_(side) {}
    Side side() const noexcept override { return side_; }
    Decision decide(const Observation&, const AgentView& view, Rng& rng) const override {
        const auto action = static_cast<ActionId>(rng.index(action_count(side_)));
        switch (action_spec(side_, action).target) {
        case TargetKind::None:
            return {action, Target::none()};
        case TargetKind::Zone:
            return {action, Target::zone(kAllZones[rng.index(kZoneCount)])};
        case TargetKind::Host:
            if (view.known_hosts.empty()) return {sleep_action(side_), Target::none()};
            return {action, Target::host(view.known_hosts[rng.index(view.known_hosts.size())])};
        }
        return {sleep_action(side_), Target::none()};
    }

  private:
    Side side_;
};

inline ScenarioConfig quiet_config() {
    ScenarioConfig c = ScenarioConfig::defaults();
    c.phishing_prob = 0.0;
    c.compromised_service_spawn_prob = 0.0;
    return c;
}

/// Plays a full episode, collecting each decision through the simulator so
/// tests can inspect every intermediate state.
template <class OnStep>
void play(Simulator& sim, const TeamPolicy& red, const TeamPolicy& blue, std::uint64_t seed, OnStep on_step) {
    Rng rng(seed);
    StepResult last = sim.initial_observations();
    while (!sim.done()) {
        JointAction joint;
        for (std::size_t i = 0; i < kRedAgents; ++i)
            if (sim.ready(Side::Red, i)) joint.red[i] = red.decide(last.red[i], sim.view(Side::Red, i), rng);
        for (std::size_t i = 0; i < kBlueAgents; ++i)
            if (sim.ready(Side::Blue, i)) joint.blue[i] = blue.decide(last.blue[i], sim.view(Side::Blue, i), rng);
        last = sim.step(joint);
        on_step(sim, last);
    }
}

} // namespace test_support

namespace test_support {

/// Raises from its first decision.
class ThrowingPolicy final : public TeamPolicy {
  public:
    explicit ThrowingPolicy(Side side) : side_(side) {}
    Side side() const noexcept override { return side_; }
    Decision decide(const Observation&, const AgentView&, Rng&) const override { throw std::runtime_error("boom"); }

  private:
    Side side_;
};

} // namespace test_support
