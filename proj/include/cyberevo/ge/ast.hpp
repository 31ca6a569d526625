#pragma once

#include "cyberevo/ge/derivation.hpp"
#include "cyberevo/sim/actions.hpp"
#include "cyberevo/sim/observation.hpp"

#include <string>
#include <variant>
#include <vector>

namespace cyberevo::ge {

enum class TargetHeuristic : std::uint8_t { Random, First, Last };

std::string_view target_heuristic_name(TargetHeuristic h) noexcept;
std::optional<TargetHeuristic> parse_target_heuristic(std::string_view name) noexcept;

enum class Comparison : std::uint8_t { Greater, Less, Equal };

/// `observations operand constant` or `success == observation['success']`.
struct Operator {
    enum class Kind : std::uint8_t { Observation, SuccessTest };
    Kind kind = Kind::Observation;
    sim::ObservationFn fn = sim::ObservationFn::Connections;
    Comparison cmp = Comparison::Greater;
    int constant = 0;
    sim::Success success = sim::Success::True;

    friend bool operator==(const Operator&, const Operator&) = default;
};

struct Condition {
    enum class Join : std::uint8_t { Single, And, Or };
    Join join = Join::Single;
    Operator lhs;
    Operator rhs;

    friend bool operator==(const Condition&, const Condition&) = default;
};

struct Statement;

struct IfStatement {
    Condition condition;
    std::vector<Statement> body;

    friend bool operator==(const IfStatement&, const IfStatement&) = default;
};

struct ActionAssign {
    sim::ActionId action = 0;
    friend bool operator==(const ActionAssign&, const ActionAssign&) = default;
};

struct TargetAssign {
    TargetHeuristic heuristic = TargetHeuristic::Random;
    friend bool operator==(const TargetAssign&, const TargetAssign&) = default;
};

struct Statement {
    std::variant<IfStatement, ActionAssign, TargetAssign> node;
    friend bool operator==(const Statement&, const Statement&) = default;
};

/// Decision program: statements run top to bottom, each `if` runs its body
/// only when its condition holds, the last assignment to action / target
/// heuristic wins. Unassigned values default to Sleep / random_target.
struct RuleAst {
    Side side = Side::Red;
    std::vector<Statement> statements;

    /// Statements, conditions and assignments in the tree.
    std::size_t node_count() const;
    friend bool operator==(const RuleAst&, const RuleAst&) = default;
};

/// Builds the program from a derivation or parse tree of a controller
/// grammar. Throws Error on actions not available to `side`, unknown
/// observation functions or a tree shape the builder does not recognize.
RuleAst build_ast(const DerivationNode& tree, Side side);

} // namespace cyberevo::ge
