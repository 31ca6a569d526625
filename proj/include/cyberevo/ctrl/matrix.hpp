#pragma once

#include "cyberevo/rng.hpp"
#include "cyberevo/sim/actions.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cyberevo::ctrl {

/// One matrix cell: a weight, or nullopt for a disallowed action.
using Cell = std::optional<double>;

/// Scales the live cells of a row to sum to 1; disallowed cells get 0. A row
/// whose live cells are all zero becomes uniform over them. Throws when every
/// cell is disallowed or a weight is negative or not finite.
std::vector<double> normalize_row(std::span<const Cell> row);

/// State x action layout of an FSM controller plus its reference weights.
struct FsmTable {
    Side side = Side::Red;
    std::vector<std::string> states;
    /// Action for each column.
    std::vector<sim::ActionId> columns;
    std::vector<std::vector<Cell>> rows;
    /// State names, lowest priority first.
    std::vector<std::string> priorities;

    /// Number of non-None cells, i.e. the genes one controller needs.
    std::size_t live_cells() const noexcept;
    std::size_t state_index(std::string_view name) const;

    /// Parses the FSM listing format: a `columns:` line naming actions,
    /// `"STATE": [w, None, ...],` rows and a `State Priorities:` line.
    static FsmTable parse(std::string_view text, Side side);
    /// The shipped adversary tables (data/red_fsm.txt, data/blue_fsm.txt).
    static const FsmTable& standard(Side side);
};

/// Stochastic state x action policy with a fixed layout.
class MatrixController {
  public:
    /// Reference weights of the table itself.
    explicit MatrixController(std::shared_ptr<const FsmTable> table);
    /// Same layout, live cells replaced by `weights` in row-major order.
    MatrixController(std::shared_ptr<const FsmTable> table, std::span<const double> weights);

    const FsmTable& table() const noexcept { return *table_; }
    /// Normalized probability row for a state.
    const std::vector<double>& probabilities(std::size_t state) const { return probs_.at(state); }
    /// Samples an action for `state` from its normalized row.
    sim::ActionId decide(std::size_t state, Rng& rng) const;

  private:
    void build();

    std::shared_ptr<const FsmTable> table_;
    std::vector<std::vector<Cell>> cells_;
    std::vector<std::vector<double>> probs_;
};

} // namespace cyberevo::ctrl
