#pragma once

#include "cyberevo/ctrl/classifier.hpp"
#include "cyberevo/ctrl/matrix.hpp"
#include "cyberevo/ge/ast.hpp"
#include "cyberevo/sim/episode.hpp"

#include <memory>
#include <span>
#include <vector>

namespace cyberevo::ctrl {

using ge::TargetHeuristic;

/// Value of an observation helper for the agent `agent` of `side`.
/// root_access_levels counts root sessions owned by that red agent; for blue
/// it counts every root session blue has uncovered.
int observation_value(sim::ObservationFn fn, const sim::Observation& obs, Side side, std::size_t agent);
/// Name-based form: `fn_name` as in the grammar, `agent_name` like "red_agent_2".
int observation_value(std::string_view fn_name, const sim::Observation& obs, std::string_view agent_name);

/// first_target: oldest host, last_target: newest, random_target: uniform.
/// Returns kNoHost for an empty list.
sim::HostId resolve_target(TargetHeuristic h, std::span<const sim::HostId> known, Rng& rng);

/// Turns an action and a focus host into a decision. Host actions target the
/// host, zone actions the zone red last came from into it; either falls back
/// to Sleep when there is nothing to target.
sim::Decision make_decision(Side side, sim::ActionId action, sim::HostId focus, const sim::Observation& obs);

/// Decision procedure of a single agent. Immutable once built.
class AgentController {
  public:
    virtual ~AgentController() = default;
    virtual Side side() const noexcept = 0;
    virtual sim::Decision decide(const sim::Observation& obs, const sim::AgentView& view, Rng& rng) const = 0;
};

/// Result of running a rule program before targets are resolved.
struct RuleOutcome {
    sim::ActionId action = 0;
    TargetHeuristic heuristic = TargetHeuristic::Random;
};

/// Runs the program: last assignment wins, defaults Sleep / random_target.
RuleOutcome run_rules(const ge::RuleAst& ast, const sim::Observation& obs, Side side, std::size_t agent);
/// run_rules followed by target resolution against the agent's host list.
sim::Decision eval_rules(const ge::RuleAst& ast, const sim::Observation& obs, const sim::AgentView& view, Rng& rng);

class RuleController final : public AgentController {
  public:
    explicit RuleController(ge::RuleAst ast);
    Side side() const noexcept override { return ast_.side; }
    const ge::RuleAst& ast() const noexcept { return ast_; }
    sim::Decision decide(const sim::Observation& obs, const sim::AgentView& view, Rng& rng) const override;

  private:
    ge::RuleAst ast_;
};

/// Matrix policy driven by the FSM state classifier. The focus host is drawn
/// with random_target; the state is classified relative to it and the action
/// sampled from that state's row is aimed at it.
class FsmController final : public AgentController {
  public:
    FsmController(MatrixController matrix, const StateClassifier& classifier);
    Side side() const noexcept override { return matrix_.table().side; }
    const MatrixController& matrix() const noexcept { return matrix_; }
    /// Row of the matrix for the classifier's state `i`.
    std::size_t row_for_state(std::size_t i) const { return state_rows_.at(i); }
    sim::Decision decide(const sim::Observation& obs, const sim::AgentView& view, Rng& rng) const override;

  private:
    MatrixController matrix_;
    const StateClassifier* classifier_;
    std::vector<std::size_t> state_rows_;
};

/// A whole team: either one controller shared by every agent, or one per
/// agent slot.
class TeamController final : public sim::TeamPolicy {
  public:
    TeamController(Side side, std::vector<std::shared_ptr<const AgentController>> controllers);

    Side side() const noexcept override { return side_; }
    std::size_t size() const noexcept { return controllers_.size(); }
    const AgentController& controller(std::size_t i) const { return *controllers_.at(i); }
    sim::Decision decide(const sim::Observation& obs, const sim::AgentView& view, Rng& rng) const override;

  private:
    Side side_;
    std::vector<std::shared_ptr<const AgentController>> controllers_;
};

/// Number of agent slots on a side (6 red, 5 blue).
std::size_t team_size(Side side) noexcept;

/// The fixed FSM adversary: the reference table for `side`, one controller
/// for the whole team.
std::shared_ptr<const TeamController> fsm_adversary(Side side);

/// Team whose agents always Sleep.
std::shared_ptr<const TeamController> sleep_team(Side side);

} // namespace cyberevo::ctrl
