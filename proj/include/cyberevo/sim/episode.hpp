#pragma once

#include "cyberevo/sim/simulator.hpp"

#include <cstdint>

namespace cyberevo::sim {

/// A whole team's decision procedure (red or blue). Implementations must be
/// immutable after construction so they can be shared across threads.
class TeamPolicy {
  public:
    virtual ~TeamPolicy() = default;
    virtual Side side() const noexcept = 0;
    virtual Decision decide(const Observation& obs, const AgentView& view, Rng& rng) const = 0;
};

/// Every agent sleeps.
class SleepPolicy final : public TeamPolicy {
  public:
    explicit SleepPolicy(Side side) : side_(side) {}
    Side side() const noexcept override { return side_; }
    Decision decide(const Observation&, const AgentView&, Rng&) const override { return {sleep_action(side_), {}}; }

  private:
    Side side_;
};

/// Raised when a controller fails mid-episode; records which side failed.
class ControllerFault : public Error {
  public:
    ControllerFault(Side side, const std::string& what) : Error(what), side_(side) {}
    Side side() const noexcept { return side_; }

  private:
    Side side_;
};

struct EpisodeResult {
    int blue_reward = 0;
    int red_reward = 0;
    int steps = 0;
};

/// Plays one episode. Controller exceptions surface as ControllerFault.
EpisodeResult run_episode(const ScenarioConfig& config, const TeamPolicy& red, const TeamPolicy& blue,
                          std::uint64_t seed);

} // namespace cyberevo::sim
