#pragma once

#include "cyberevo/evo/individual.hpp"
#include "cyberevo/sim/scenario_config.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cyberevo::evo {

/// One line of a fitness trace.
struct TraceRow {
    int trial = 0;
    int iteration = 0;
    Side side = Side::Blue;
    std::string algorithm;
    double best = 0.0;
    double mean = 0.0;
    std::size_t episodes = 0;
    double wall_time = 0.0;

    friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

using FitnessTrace = std::vector<TraceRow>;

struct Evaluation {
    /// Mean side reward; meaningless when faulted.
    double fitness = 0.0;
    bool faulted = false;
    std::size_t episodes = 0;
};

/// Mean reward of `controller`'s side over `repetitions` episodes against
/// `adversary`; repetition r uses seed derive_seed(seed, {r}). A fault of the
/// controller stops the evaluation and flags it. Blue fitness is at most 0.
Evaluation evaluate_vs_fixed(const sim::TeamPolicy& controller, const sim::TeamPolicy& adversary,
                             const sim::ScenarioConfig& scenario, int repetitions, std::uint64_t seed);

/// Final fitness values: faulted (nullopt) entries get the worst observed
/// value minus `margin`, or -margin when nothing was observed.
std::vector<double> resolve_faults(std::span<const std::optional<double>> raw, double margin);

/// Population of one side plus its variation machinery.
class Population {
  public:
    Population(const EvoConfig& config, const Representation& rep, std::uint64_t seed,
               PhenotypeMutator* mutator = nullptr);

    const std::vector<Individual>& individuals() const noexcept { return members_; }
    std::vector<Individual>& individuals() noexcept { return members_; }
    const Representation& representation() const noexcept { return rep_; }
    const EvoConfig& config() const noexcept { return config_; }

    /// Decodes every undecoded member. Invalid members are replaced by fresh
    /// random individuals, at most retry_cap times per slot; a slot that
    /// stays invalid is left undecoded. Returns the number of replacements.
    std::size_t prepare();

    /// Applies the fault policy to raw scores (nullopt = faulted or invalid).
    void assign(std::span<const std::optional<double>> raw);

    /// Index of the fittest member, ties to the lowest index.
    std::size_t best_index() const;
    double best_fitness() const;
    double mean_fitness() const;

    /// Next generation: the elites first (keeping their fitness when
    /// `keep_elite_fitness`), then offspring from tournament selection,
    /// crossover and mutation.
    void advance(bool keep_elite_fitness);

  private:
    Individual make_child(const Individual& parent, Genome genome, bool recombined);

    EvoConfig config_;
    Representation rep_;
    Rng rng_;
    PhenotypeMutator* mutator_;
    std::vector<Individual> members_;
};

/// What an observer sees after each iteration's fitness assignment.
struct Generation {
    int iteration = 0;
    const Population* population = nullptr;
    std::size_t episodes = 0;
    std::size_t replacements = 0;
};

struct RunOptions {
    /// Scenario to play; defaults when null. Its step count is overridden by the config.
    const sim::ScenarioConfig* scenario = nullptr;
    /// Required for GE-LLM.
    PhenotypeMutator* mutator = nullptr;
    std::function<void(const Generation&)> observer;
    int trial = 0;
    /// Algorithm column of the trace; defaults to the algorithm name.
    std::string label;
    bool record_wall_time = false;
};

/// Evolves one side against a fixed adversary. Trial seed is config.seed;
/// individual i of iteration t is evaluated with derive_seed(seed, {0, t, i}).
/// Elites keep their fitness, so best fitness never decreases.
FitnessTrace evolve_one_sided(const EvoConfig& config, const Representation& rep, const sim::TeamPolicy& adversary,
                              const RunOptions& options = {});

/// Scenario from the options with the config's step count applied; phase
/// boundaries are scaled with the episode length.
sim::ScenarioConfig scenario_for(const EvoConfig& config, const sim::ScenarioConfig* scenario);

} // namespace cyberevo::evo
