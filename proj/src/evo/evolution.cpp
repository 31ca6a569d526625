#include "cyberevo/evo/evolution.hpp"

#include "cyberevo/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>

namespace cyberevo::evo {

Evaluation evaluate_vs_fixed(const sim::TeamPolicy& controller, const sim::TeamPolicy& adversary,
                             const sim::ScenarioConfig& scenario, int repetitions, std::uint64_t seed) {
    if (controller.side() == adversary.side()) throw Error("evaluate_vs_fixed: controller and adversary on the same side");
    if (repetitions <= 0) throw Error("evaluate_vs_fixed: repetitions must be positive");
    const bool red = controller.side() == Side::Red;
    Evaluation out;
    double total = 0.0;
    for (int r = 0; r < repetitions; ++r) {
        const std::uint64_t episode_seed = derive_seed(seed, {static_cast<std::uint64_t>(r)});
        ++out.episodes;
        try {
            const auto result = red ? sim::run_episode(scenario, controller, adversary, episode_seed)
                                    : sim::run_episode(scenario, adversary, controller, episode_seed);
            total += red ? result.red_reward : result.blue_reward;
        } catch (const sim::ControllerFault& fault) {
            if (fault.side() != controller.side()) throw;
            out.faulted = true;
            return out;
        }
    }
    out.fitness = total / repetitions;
    return out;
}

std::vector<double> resolve_faults(std::span<const std::optional<double>> raw, double margin) {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& r : raw)
        if (r) worst = std::min(worst, *r);
    if (worst == std::numeric_limits<double>::infinity()) worst = 0.0;
    std::vector<double> out;
    out.reserve(raw.size());
    for (const auto& r : raw) out.push_back(r ? *r : worst - margin);
    return out;
}

sim::ScenarioConfig scenario_for(const EvoConfig& config, const sim::ScenarioConfig* scenario) {
    sim::ScenarioConfig s = scenario ? *scenario : sim::ScenarioConfig::defaults();
    if (s.steps != config.steps) {
        const auto scale = [&](int b) {
            return static_cast<int>(static_cast<long long>(b) * config.steps / s.steps);
        };
        s.phases = {scale(s.phases.phase2a_start), scale(s.phases.phase2b_start)};
        s.steps = config.steps;
    }
    s.validate();
    return s;
}

Population::Population(const EvoConfig& config, const Representation& rep, std::uint64_t seed,
                       PhenotypeMutator* mutator)
    : config_(config), rep_(rep), rng_(seed), mutator_(mutator) {
    config_.validate();
    if (rep_.algorithm == Algorithm::GELLM && !mutator_) throw Error("Population: GE-LLM needs a phenotype mutator");
    const std::size_t length = config_.length_for(rep_.algorithm);
    if (length < rep_.min_genome_length())
        throw Error("Population: genome length " + std::to_string(length) + " is below the minimum " +
                    std::to_string(rep_.min_genome_length()));
    rep_.max_wraps = config_.max_wraps;
    members_.reserve(config_.population);
    for (std::size_t i = 0; i < config_.population; ++i) members_.push_back(random_individual(rep_, length, rng_));
}

std::size_t Population::prepare() {
    const std::size_t length = config_.length_for(rep_.algorithm);
    std::size_t replaced = 0;
    for (auto& ind : members_) {
        if (ind.decoded()) continue;
        if (!ind.invalid && decode(ind, rep_)) continue;
        for (int attempt = 0; attempt < config_.retry_cap; ++attempt) {
            ind = random_individual(rep_, length, rng_);
            ++replaced;
            if (decode(ind, rep_)) break;
        }
    }
    return replaced;
}

void Population::assign(std::span<const std::optional<double>> raw) {
    if (raw.size() != members_.size()) throw Error("Population::assign: size mismatch");
    const auto fitness = resolve_faults(raw, config_.fault_margin);
    for (std::size_t i = 0; i < members_.size(); ++i) members_[i].fitness = fitness[i];
}

std::size_t Population::best_index() const {
    std::size_t best = 0;
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (!members_[i].fitness) throw Error("Population: unevaluated individual");
        if (*members_[i].fitness > *members_[best].fitness) best = i;
    }
    return best;
}

double Population::best_fitness() const { return *members_[best_index()].fitness; }

double Population::mean_fitness() const {
    double sum = 0.0;
    for (const auto& m : members_) {
        if (!m.fitness) throw Error("Population: unevaluated individual");
        sum += *m.fitness;
    }
    return sum / static_cast<double>(members_.size());
}

Individual Population::make_child(const Individual& parent, Genome genome, bool recombined) {
    Individual child;
    if (recombined) {
        child.genome = std::move(genome);
    } else {
        child = parent;
        child.fitness.reset();
    }
    const bool llm = rep_.algorithm == Algorithm::GELLM;
    if (!llm || (!config_.llm_replaces_mutation && !child.detached)) {
        if (!child.detached) {
            Genome mutated = mutate(child.genome, rep_.encoding(), config_.mutation_prob, config_.sigma, rng_);
            if (mutated != child.genome) {
                child.genome = std::move(mutated);
                child.team.reset();
                child.programs.clear();
                child.invalid = false;
            }
        }
    }
    if (llm && rng_.bernoulli(config_.mutation_prob)) {
        if (!child.decoded() && !child.invalid) decode(child, rep_);
        if (child.decoded()) child = mutator_->mutate(child, rep_, rng_);
    }
    return child;
}

void Population::advance(bool keep_elite_fitness) {
    std::vector<std::size_t> order(members_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return *members_[a].fitness > *members_[b].fitness; });
    std::vector<Individual> next;
    next.reserve(config_.population);
    for (std::size_t e = 0; e < config_.elite; ++e) {
        next.push_back(members_[order[e]]);
        if (!keep_elite_fitness) next.back().fitness.reset();
    }
    std::vector<std::optional<double>> fitness;
    for (const auto& m : members_) fitness.push_back(m.fitness);
    while (next.size() < config_.population) {
        const Individual& a = members_[tournament_select(fitness, config_.tournament, rng_)];
        const Individual& b = members_[tournament_select(fitness, config_.tournament, rng_)];
        const bool recombine = uses_crossover(rep_.algorithm) && !a.detached && !b.detached &&
                               a.genome.size() >= 2 && rng_.bernoulli(config_.crossover_prob);
        if (recombine) {
            auto [x, y] = crossover_at(a.genome, b.genome, 1 + rng_.index(a.genome.size() - 1));
            next.push_back(make_child(a, std::move(x), true));
            if (next.size() < config_.population) next.push_back(make_child(b, std::move(y), true));
        } else {
            next.push_back(make_child(a, {}, false));
            if (next.size() < config_.population) next.push_back(make_child(b, {}, false));
        }
    }
    members_ = std::move(next);
}

FitnessTrace evolve_one_sided(const EvoConfig& config, const Representation& rep, const sim::TeamPolicy& adversary,
                              const RunOptions& options) {
    config.validate();
    if (adversary.side() == rep.side) throw Error("evolve_one_sided: adversary must play the other side");
    const sim::ScenarioConfig scenario = scenario_for(config, options.scenario);
    Population pop(config, rep, derive_seed(config.seed, {1}), options.mutator);
    const std::string label = options.label.empty() ? std::string(algorithm_name(rep.algorithm)) : options.label;

    FitnessTrace trace;
    for (int it = 0; it < config.iterations; ++it) {
        const auto start = std::chrono::steady_clock::now();
        const std::size_t replaced = pop.prepare();
        auto& members = pop.individuals();
        std::vector<std::optional<double>> raw(members.size());
        std::vector<std::size_t> episodes(members.size(), 0);
        parallel_for(members.size(), config.threads, [&](std::size_t i) {
            const Individual& ind = members[i];
            if (ind.fitness) {
                raw[i] = ind.fitness;
                return;
            }
            if (!ind.decoded()) return;
            const auto seed = derive_seed(config.seed, {0, static_cast<std::uint64_t>(it), i});
            const auto eval = evaluate_vs_fixed(*ind.team, adversary, scenario, config.repetitions, seed);
            episodes[i] = eval.episodes;
            if (!eval.faulted) raw[i] = eval.fitness;
        });
        pop.assign(raw);

        TraceRow row;
        row.trial = options.trial;
        row.iteration = it;
        row.side = rep.side;
        row.algorithm = label;
        row.best = pop.best_fitness();
        row.mean = pop.mean_fitness();
        row.episodes = std::accumulate(episodes.begin(), episodes.end(), std::size_t{0});
        if (options.record_wall_time)
            row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (options.observer) options.observer(Generation{it, &pop, row.episodes, replaced});
        trace.push_back(std::move(row));
        if (it + 1 < config.iterations) pop.advance(true);
    }
    return trace;
}

} // namespace cyberevo::evo
