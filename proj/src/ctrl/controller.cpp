#include "cyberevo/ctrl/controller.hpp"

#include <algorithm>

namespace cyberevo::ctrl {

namespace {

bool compare(ge::Comparison cmp, int lhs, int rhs) {
    switch (cmp) {
    case ge::Comparison::Greater:
        return lhs > rhs;
    case ge::Comparison::Less:
        return lhs < rhs;
    case ge::Comparison::Equal:
        return lhs == rhs;
    }
    return false;
}

struct Evaluator {
    const sim::Observation& obs;
    Side side;
    std::size_t agent;
    RuleOutcome out;

    bool holds(const ge::Operator& op) const {
        if (op.kind == ge::Operator::Kind::SuccessTest) return obs.success == op.success;
        return compare(op.cmp, observation_value(op.fn, obs, side, agent), op.constant);
    }

    bool holds(const ge::Condition& c) const {
        switch (c.join) {
        case ge::Condition::Join::Single:
            return holds(c.lhs);
        case ge::Condition::Join::And:
            return holds(c.lhs) && holds(c.rhs);
        case ge::Condition::Join::Or:
            return holds(c.lhs) || holds(c.rhs);
        }
        return false;
    }

    void run(const std::vector<ge::Statement>& statements) {
        for (const auto& s : statements) {
            if (const auto* i = std::get_if<ge::IfStatement>(&s.node)) {
                if (holds(i->condition)) run(i->body);
            } else if (const auto* a = std::get_if<ge::ActionAssign>(&s.node)) {
                out.action = a->action;
            } else {
                out.heuristic = std::get<ge::TargetAssign>(s.node).heuristic;
            }
        }
    }
};

std::size_t parse_agent_index(std::string_view name, Side& side) {
    for (Side s : {Side::Red, Side::Blue}) {
        const std::string prefix = std::string(to_string(s)) + "_agent_";
        if (name.starts_with(prefix)) {
            side = s;
            const auto digits = name.substr(prefix.size());
            std::size_t idx = 0;
            if (digits.empty()) break;
            for (char c : digits) {
                if (c < '0' || c > '9') throw Error("bad agent name '" + std::string(name) + "'");
                idx = idx * 10 + static_cast<std::size_t>(c - '0');
            }
            if (idx >= team_size(s)) throw Error("agent index out of range in '" + std::string(name) + "'");
            return idx;
        }
    }
    throw Error("bad agent name '" + std::string(name) + "'");
}

} // namespace

int observation_value(sim::ObservationFn fn, const sim::Observation& obs, Side side, std::size_t agent) {
    int n = 0;
    for (const auto& r : obs.records()) {
        switch (fn) {
        case sim::ObservationFn::Connections:
            n += r.connections;
            break;
        case sim::ObservationFn::FilesUser:
            n += r.user_files;
            break;
        case sim::ObservationFn::FilesRoot:
            n += r.root_files;
            break;
        case sim::ObservationFn::NServers:
            n += r.server ? 1 : 0;
            break;
        case sim::ObservationFn::RootAccessLevels:
            if (r.root_sessions > 0 && (side == Side::Blue || r.session_owner == static_cast<int>(agent))) n += r.root_sessions;
            break;
        }
    }
    return n;
}

int observation_value(std::string_view fn_name, const sim::Observation& obs, std::string_view agent_name) {
    const auto fn = sim::find_observation_fn(fn_name);
    if (!fn) throw Error("unknown observation function '" + std::string(fn_name) + "'");
    Side side = Side::Red;
    const std::size_t agent = parse_agent_index(agent_name, side);
    return observation_value(*fn, obs, side, agent);
}

sim::HostId resolve_target(TargetHeuristic h, std::span<const sim::HostId> known, Rng& rng) {
    if (known.empty()) return sim::kNoHost;
    switch (h) {
    case TargetHeuristic::First:
        return known.front();
    case TargetHeuristic::Last:
        return known.back();
    case TargetHeuristic::Random:
        break;
    }
    return known[rng.index(known.size())];
}

sim::Decision make_decision(Side side, sim::ActionId action, sim::HostId focus, const sim::Observation& obs) {
    const sim::Decision sleep{sim::sleep_action(side), sim::Target::none()};
    switch (sim::action_spec(side, action).target) {
    case sim::TargetKind::None:
        return {action, sim::Target::none()};
    case sim::TargetKind::Host:
        if (focus == sim::kNoHost) return sleep;
        return {action, sim::Target::host(focus)};
    case sim::TargetKind::Zone:
        for (const auto& r : obs.records())
            if (r.host == focus && r.inbound_zone) return {action, sim::Target::zone(*r.inbound_zone)};
        return sleep;
    }
    return sleep;
}

RuleOutcome run_rules(const ge::RuleAst& ast, const sim::Observation& obs, Side side, std::size_t agent) {
    Evaluator ev{obs, side, agent, {sim::sleep_action(side), TargetHeuristic::Random}};
    ev.run(ast.statements);
    return ev.out;
}

sim::Decision eval_rules(const ge::RuleAst& ast, const sim::Observation& obs, const sim::AgentView& view, Rng& rng) {
    const RuleOutcome out = run_rules(ast, obs, view.side, view.index);
    const sim::HostId focus = resolve_target(out.heuristic, view.known_hosts, rng);
    return make_decision(view.side, out.action, focus, obs);
}

RuleController::RuleController(ge::RuleAst ast) : ast_(std::move(ast)) {
    const std::size_t actions = sim::action_count(ast_.side);
    std::vector<const std::vector<ge::Statement>*> stack{&ast_.statements};
    while (!stack.empty()) {
        const auto* list = stack.back();
        stack.pop_back();
        for (const auto& s : *list) {
            if (const auto* i = std::get_if<ge::IfStatement>(&s.node)) stack.push_back(&i->body);
            else if (const auto* a = std::get_if<ge::ActionAssign>(&s.node); a && a->action >= actions)
                throw Error("RuleController: action id out of range for " + std::string(to_string(ast_.side)));
        }
    }
}

sim::Decision RuleController::decide(const sim::Observation& obs, const sim::AgentView& view, Rng& rng) const {
    return eval_rules(ast_, obs, view, rng);
}

FsmController::FsmController(MatrixController matrix, const StateClassifier& classifier)
    : matrix_(std::move(matrix)), classifier_(&classifier) {
    const FsmTable& table = matrix_.table();
    if (classifier.side() != table.side) throw Error("FsmController: classifier and table are for different sides");
    if (classifier.rules().size() != table.priorities.size())
        throw Error("FsmController: classifier states do not match the FSM table");
    for (std::size_t i = 0; i < classifier.rules().size(); ++i) {
        if (classifier.rules()[i].state != table.priorities[i])
            throw Error("FsmController: classifier state order must follow the table's state priorities");
        state_rows_.push_back(table.state_index(classifier.rules()[i].state));
    }
}

sim::Decision FsmController::decide(const sim::Observation& obs, const sim::AgentView& view, Rng& rng) const {
    const Side s = side();
    const sim::HostId focus = resolve_target(TargetHeuristic::Random, view.known_hosts, rng);
    if (focus == sim::kNoHost) return {sim::sleep_action(s), sim::Target::none()};
    const auto features = extract_features(obs, view, focus);
    const std::size_t row = state_rows_[classifier_->classify(features)];
    return make_decision(s, matrix_.decide(row, rng), focus, obs);
}

TeamController::TeamController(Side side, std::vector<std::shared_ptr<const AgentController>> controllers)
    : side_(side), controllers_(std::move(controllers)) {
    if (controllers_.empty()) throw Error("TeamController: no controllers");
    if (controllers_.size() != 1 && controllers_.size() != team_size(side))
        throw Error("TeamController: need 1 or " + std::to_string(team_size(side)) + " controllers");
    for (const auto& c : controllers_) {
        if (!c) throw Error("TeamController: null controller");
        if (c->side() != side) throw Error("TeamController: controller for the wrong side");
    }
}

sim::Decision TeamController::decide(const sim::Observation& obs, const sim::AgentView& view, Rng& rng) const {
    const auto& c = controllers_.size() == 1 ? controllers_.front() : controllers_.at(view.index);
    return c->decide(obs, view, rng);
}

std::size_t team_size(Side side) noexcept { return side == Side::Red ? sim::kRedAgents : sim::kBlueAgents; }

std::shared_ptr<const TeamController> fsm_adversary(Side side) {
    auto table = std::shared_ptr<const FsmTable>(&FsmTable::standard(side), [](const FsmTable*) {});
    auto agent = std::make_shared<FsmController>(MatrixController(table), StateClassifier::standard(side));
    return std::make_shared<TeamController>(side, std::vector<std::shared_ptr<const AgentController>>{agent});
}

std::shared_ptr<const TeamController> sleep_team(Side side) {
    ge::RuleAst ast;
    ast.side = side;
    ast.statements.push_back({ge::ActionAssign{sim::sleep_action(side)}});
    return std::make_shared<TeamController>(
        side, std::vector<std::shared_ptr<const AgentController>>{std::make_shared<RuleController>(std::move(ast))});
}

} // namespace cyberevo::ctrl
