#pragma once

#include "cyberevo/rng.hpp"
#include "cyberevo/sim/actions.hpp"
#include "cyberevo/sim/observation.hpp"
#include "cyberevo/sim/rewards.hpp"
#include "cyberevo/sim/scenario_config.hpp"
#include "cyberevo/sim/topology.hpp"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace cyberevo::sim {

enum class Access : std::uint8_t { None, User, Root };

/// Compromise record of a host as the scenario sees it.
enum class Compromise : std::uint8_t { None, User, Root, Degraded };

struct HostState {
    Access red_access = Access::None;
    /// Red agent slot owning the session, -1 when none.
    int owner = -1;
    bool degraded = false;
    bool impacted = false;
    bool decoy = false;
    /// Red's permanent contractor session.
    bool foothold = false;
    /// Blue has seen the current red session through Analyse.
    bool blue_revealed = false;
    /// Steps left while a Restore keeps the host offline.
    int restoring = 0;
    /// Bit i set: red agent i has scanned this host's services.
    std::uint8_t scanned_mask = 0;
    std::optional<Zone> inbound_zone;

    // Per-step event counters, reset at the start of every step.
    int connections = 0;
    int processes = 0;
    int user_files = 0;
    int root_files = 0;
    bool decoy_alert = false;
};

struct PendingAction {
    ActionId action = 0;
    Target target;
    int remaining = 0;
};

struct RedAgentState {
    bool active = false;
    /// Known hosts in discovery order (oldest first).
    std::vector<HostId> known;
    std::vector<int> discovered_at;
    std::vector<bool> is_known;
    std::vector<bool> known_decoy;
    std::optional<PendingAction> pending;
    Success last_success = Success::Unknown;
    /// Hosts discovered by the action that completed this step.
    int fresh_discoveries = 0;
};

struct BlueAgentState {
    std::span<const Zone> zones;
    /// Hosts in the agent's zones; hosts with new activity move to the back.
    std::vector<HostId> watch;
    std::optional<PendingAction> pending;
    Success last_success = Success::Unknown;
    HostId last_analysed = kNoHost;
    bool last_analysis_clean = false;
};

struct NetworkState {
    Topology topology;
    int step = 0;
    Phase phase = Phase::Phase1;
    std::vector<HostState> hosts;
    std::array<RedAgentState, kRedAgents> red;
    std::array<BlueAgentState, kBlueAgents> blue;
    /// blocked[from][to]: traffic from zone `from` into zone `to` is dropped.
    std::array<std::array<bool, kZoneCount>, kZoneCount> blocked{};
    /// Red agent slot present in each zone, -1 when none.
    std::array<int, kZoneCount> zone_owner{};
    HostId foothold = kNoHost;

    Compromise compromise(HostId h) const;
};

/// Per-agent actions for one step. Missing entries mean Sleep.
struct JointAction {
    std::array<std::optional<Decision>, kRedAgents> red;
    std::array<std::optional<Decision>, kBlueAgents> blue;
};

struct StepResult {
    StepEvents events;
    Rewards rewards;
    Phase phase = Phase::Phase1;
    std::array<Observation, kRedAgents> red;
    std::array<Observation, kBlueAgents> blue;
};

/// One green user's choice for a step. `host`/`service` name the remote
/// service for AccessService and are unset for LocalWork.
struct GreenChoice {
    GreenAction action = GreenAction::LocalWork;
    HostId host = kNoHost;
    std::uint8_t service = 0;
};

/// What a controller may know about its own agent besides the observation.
struct AgentView {
    Side side = Side::Red;
    std::size_t index = 0;
    std::span<const HostId> known_hosts;
    std::span<const Zone> zones;
    int fresh_discoveries = 0;
    HostId last_analysed = kNoHost;
    bool last_analysis_clean = false;
};

/// Discrete-step scenario simulation. One instance per episode; single
/// threaded; all randomness comes from the seed given at construction.
class Simulator {
  public:
    Simulator(ScenarioConfig config, std::uint64_t seed);

    const NetworkState& state() const noexcept { return state_; }
    const ScenarioConfig& config() const noexcept { return config_; }
    bool done() const noexcept { return state_.step >= config_.steps; }

    /// Agent can submit a new action this step (active and not mid-action).
    bool ready(Side side, std::size_t agent) const;
    AgentView view(Side side, std::size_t agent) const;
    /// Observation handed to agents before the first step.
    StepResult initial_observations() const;

    /// Advances one step. Throws Error for a malformed target (unknown host or
    /// zone, or a target kind that does not match the action).
    StepResult step(const JointAction& actions);

    /// Green user behaviour for the user on `source`: LocalWork with the
    /// configured probability, otherwise AccessService on a uniformly chosen
    /// service of any other host.
    GreenChoice green_policy(HostId source, Rng& rng) const;

    /// Only for tests and scripted scenarios.
    NetworkState& mutable_state() noexcept { return state_; }

    /// Throws Error when `d` names an unknown action, host or zone, or its
    /// target kind does not match the action.
    void validate(Side side, std::size_t agent, const Decision& d) const;

  private:
    void start_actions(const JointAction& actions);
    void complete_blue(std::size_t agent, const PendingAction& a);
    void complete_red(std::size_t agent, const PendingAction& a, StepEvents& events);
    void run_green(StepEvents& events);
    void run_phishing();
    void spawn(HostId h);
    /// Drops zone claims without sessions and deactivates agents left with none.
    void reap_agents();
    void grant_session(HostId h, int owner);
    void discover(std::size_t agent, HostId h);
    std::optional<Zone> red_source_zone(Zone target_zone) const;
    bool owns_zone(std::size_t blue_agent, Zone z) const;
    void refresh_watch_lists();
    StepResult build_observations(StepEvents events, Phase phase) const;

    ScenarioConfig config_;
    NetworkState state_;
    Rng rng_;
    /// (host, service) pairs green users can reach, in topology order.
    std::vector<std::pair<HostId, std::uint8_t>> service_index_;
    /// First service_index_ entry of each host.
    std::vector<std::size_t> service_offset_;
};

} // namespace cyberevo::sim
