#pragma once

#include "cyberevo/evo/evolution.hpp"

#include <functional>
#include <vector>

namespace cyberevo::coevo {

/// Red episode rewards of every red x blue pairing, averaged over
/// repetitions. Blue's payoff for a cell is its negation.
struct PayoffMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> cells;
    /// Rows / columns whose controller faulted or failed to decode.
    std::vector<bool> red_faulted;
    std::vector<bool> blue_faulted;
    std::size_t episodes = 0;

    PayoffMatrix() = default;
    PayoffMatrix(std::size_t r, std::size_t c);
    double& at(std::size_t i, std::size_t j) { return cells.at(i * cols + j); }
    double at(std::size_t i, std::size_t j) const { return cells.at(i * cols + j); }
    /// Blue as rows, red as columns, cells negated.
    PayoffMatrix swapped() const;
};

/// Plays every pairing `repetitions` times; pairing (i, j) repetition r uses
/// derive_seed(seed, {0, iteration, i, j, r}). Null entries stand for
/// undecodable individuals and play no episodes.
PayoffMatrix all_vs_all(const std::vector<const sim::TeamPolicy*>& red, const std::vector<const sim::TeamPolicy*>& blue,
                        const sim::ScenarioConfig& scenario, int repetitions, std::uint64_t seed, int iteration,
                        std::size_t threads = 0);

struct MeuFitness {
    std::vector<double> red;
    std::vector<double> blue;
};

/// Mean expected utility: red_i = mean of row i, blue_j = -(mean of column j).
MeuFitness mean_expected_utility(const PayoffMatrix& matrix);

struct CoevoConfig {
    evo::EvoConfig red;
    evo::EvoConfig blue;
    evo::Representation red_rep{Side::Red};
    evo::Representation blue_rep{Side::Blue};
    /// Algorithm column of the traces, e.g. "GE-C".
    std::string label;

    /// Both sides must share steps and repetitions; episode seeds come from red.seed.
    void validate() const;
};

struct CoevoGeneration {
    int iteration = 0;
    const evo::Population* red = nullptr;
    const evo::Population* blue = nullptr;
    const PayoffMatrix* matrix = nullptr;
};

struct CoevoOptions {
    const sim::ScenarioConfig* scenario = nullptr;
    evo::PhenotypeMutator* red_mutator = nullptr;
    evo::PhenotypeMutator* blue_mutator = nullptr;
    std::function<void(const CoevoGeneration&)> observer;
    int trial = 0;
    bool record_wall_time = false;
};

struct CoevoTraces {
    evo::FitnessTrace red;
    evo::FitnessTrace blue;
};

/// Two populations coupled at fitness evaluation: all-vs-all play, MEU
/// fitness, then independent variation per side. Elites are carried but
/// re-evaluated each iteration, so best fitness may drop.
CoevoTraces coevolve(const CoevoConfig& config, const CoevoOptions& options = {});

} // namespace cyberevo::coevo
