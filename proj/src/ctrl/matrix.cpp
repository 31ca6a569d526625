#include "cyberevo/ctrl/matrix.hpp"

#include "cyberevo/embedded_data.hpp"
#include "cyberevo/kv_config.hpp"

#include <algorithm>
#include <cmath>

namespace cyberevo::ctrl {

std::vector<double> normalize_row(std::span<const Cell> row) {
    std::vector<double> out(row.size(), 0.0);
    double total = 0.0;
    std::size_t live = 0;
    for (const Cell& c : row) {
        if (!c) continue;
        if (!std::isfinite(*c) || *c < 0.0) throw Error("normalize_row: weights must be finite and nonnegative");
        total += *c;
        ++live;
    }
    if (live == 0) throw Error("normalize_row: every cell is disallowed");
    for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i]) out[i] = total > 0.0 ? *row[i] / total : 1.0 / static_cast<double>(live);
    return out;
}

std::size_t FsmTable::live_cells() const noexcept {
    std::size_t n = 0;
    for (const auto& r : rows) n += static_cast<std::size_t>(std::count_if(r.begin(), r.end(), [](const Cell& c) { return c.has_value(); }));
    return n;
}

std::size_t FsmTable::state_index(std::string_view name) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == name) return i;
    throw Error("FSM table has no state '" + std::string(name) + "'");
}

FsmTable FsmTable::parse(std::string_view text, Side side) {
    FsmTable t;
    t.side = side;
    std::size_t line_no = 0;
    for (std::string_view line : split(text, '\n')) {
        ++line_no;
        const auto where = "FSM table line " + std::to_string(line_no) + ": ";
        if (line.empty() || line.front() == '#') continue;
        if (line.starts_with("columns:")) {
            for (auto name : split(line.substr(8), ',')) {
                const auto a = sim::find_action(side, name);
                if (!a) throw Error(where + "'" + std::string(name) + "' is not a " + std::string(to_string(side)) + " action");
                t.columns.push_back(*a);
            }
        } else if (line.starts_with("State Priorities:")) {
            for (auto name : split(line.substr(17), ',')) t.priorities.emplace_back(name);
        } else if (line.front() == '"') {
            const auto close = line.find('"', 1);
            const auto open_br = line.find('[');
            const auto close_br = line.find(']');
            if (close == std::string_view::npos || open_br == std::string_view::npos || close_br == std::string_view::npos ||
                close_br < open_br)
                throw Error(where + "expected \"STATE\": [ ... ]");
            t.states.emplace_back(line.substr(1, close - 1));
            std::vector<Cell> row;
            for (auto v : split(line.substr(open_br + 1, close_br - open_br - 1), ','))
                row.push_back(v == "None" ? Cell{} : Cell{parse_double(v, "FSM weight")});
            t.rows.push_back(std::move(row));
        } else {
            throw Error(where + "unrecognized line");
        }
    }
    if (t.columns.empty()) throw Error("FSM table has no columns line");
    if (t.rows.empty()) throw Error("FSM table has no rows");
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (t.rows[i].size() != t.columns.size())
            throw Error("FSM row '" + t.states[i] + "' has " + std::to_string(t.rows[i].size()) + " cells for " +
                        std::to_string(t.columns.size()) + " columns");
        (void)normalize_row(t.rows[i]);
    }
    auto sorted_states = t.states, sorted_prio = t.priorities;
    std::sort(sorted_states.begin(), sorted_states.end());
    std::sort(sorted_prio.begin(), sorted_prio.end());
    if (sorted_states != sorted_prio || std::adjacent_find(sorted_states.begin(), sorted_states.end()) != sorted_states.end())
        throw Error("FSM state priorities must list every state exactly once");
    return t;
}

const FsmTable& FsmTable::standard(Side side) {
    static const FsmTable red = parse(embedded_file("red_fsm.txt"), Side::Red);
    static const FsmTable blue = parse(embedded_file("blue_fsm.txt"), Side::Blue);
    return side == Side::Red ? red : blue;
}

MatrixController::MatrixController(std::shared_ptr<const FsmTable> table) : table_(std::move(table)) {
    if (!table_) throw Error("MatrixController: null table");
    cells_ = table_->rows;
    build();
}

MatrixController::MatrixController(std::shared_ptr<const FsmTable> table, std::span<const double> weights)
    : table_(std::move(table)) {
    if (!table_) throw Error("MatrixController: null table");
    if (weights.size() != table_->live_cells())
        throw Error("MatrixController: expected " + std::to_string(table_->live_cells()) + " weights, got " +
                    std::to_string(weights.size()));
    cells_ = table_->rows;
    std::size_t k = 0;
    for (auto& row : cells_)
        for (auto& c : row)
            if (c) c = weights[k++];
    build();
}

void MatrixController::build() {
    probs_.clear();
    for (const auto& row : cells_) probs_.push_back(normalize_row(row));
}

sim::ActionId MatrixController::decide(std::size_t state, Rng& rng) const {
    const auto& p = probs_.at(state);
    const double u = rng.uniform01();
    double cum = 0.0;
    std::size_t last_live = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        cum += p[i];
        last_live = i;
        if (u < cum) return table_->columns[i];
    }
    // Rounding left u just above the final cumulative sum.
    return table_->columns[last_live];
}

} // namespace cyberevo::ctrl
