#include "cyberevo/coevo/coevolution.hpp"

#include "cyberevo/parallel.hpp"

#include <chrono>

namespace cyberevo::coevo {

PayoffMatrix::PayoffMatrix(std::size_t r, std::size_t c)
    : rows(r), cols(c), cells(r * c, 0.0), red_faulted(r, false), blue_faulted(c, false) {}

PayoffMatrix PayoffMatrix::swapped() const {
    PayoffMatrix out(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) out.at(j, i) = -at(i, j);
    out.red_faulted = blue_faulted;
    out.blue_faulted = red_faulted;
    out.episodes = episodes;
    return out;
}

PayoffMatrix all_vs_all(const std::vector<const sim::TeamPolicy*>& red, const std::vector<const sim::TeamPolicy*>& blue,
                        const sim::ScenarioConfig& scenario, int repetitions, std::uint64_t seed, int iteration,
                        std::size_t threads) {
    if (repetitions <= 0) throw Error("all_vs_all: repetitions must be positive");
    for (const auto* r : red)
        if (r && r->side() != Side::Red) throw Error("all_vs_all: blue policy in the red population");
    for (const auto* b : blue)
        if (b && b->side() != Side::Blue) throw Error("all_vs_all: red policy in the blue population");
    PayoffMatrix m(red.size(), blue.size());
    for (std::size_t i = 0; i < red.size(); ++i) m.red_faulted[i] = red[i] == nullptr;
    for (std::size_t j = 0; j < blue.size(); ++j) m.blue_faulted[j] = blue[j] == nullptr;

    struct CellResult {
        std::size_t episodes = 0;
        bool red_fault = false;
        bool blue_fault = false;
    };
    std::vector<CellResult> results(m.cells.size());
    parallel_for(m.cells.size(), threads, [&](std::size_t c) {
        const std::size_t i = c / m.cols, j = c % m.cols;
        if (!red[i] || !blue[j]) return;
        double total = 0.0;
        for (int r = 0; r < repetitions; ++r) {
            const auto s = derive_seed(seed, {0, static_cast<std::uint64_t>(iteration), i, j, static_cast<std::uint64_t>(r)});
            ++results[c].episodes;
            try {
                total += sim::run_episode(scenario, *red[i], *blue[j], s).red_reward;
            } catch (const sim::ControllerFault& fault) {
                (fault.side() == Side::Red ? results[c].red_fault : results[c].blue_fault) = true;
                return;
            }
        }
        m.cells[c] = total / repetitions;
    });
    for (std::size_t c = 0; c < results.size(); ++c) {
        m.episodes += results[c].episodes;
        if (results[c].red_fault) m.red_faulted[c / m.cols] = true;
        if (results[c].blue_fault) m.blue_faulted[c % m.cols] = true;
    }
    return m;
}

MeuFitness mean_expected_utility(const PayoffMatrix& matrix) {
    if (matrix.rows == 0 || matrix.cols == 0) throw Error("mean_expected_utility: empty matrix");
    MeuFitness f{std::vector<double>(matrix.rows, 0.0), std::vector<double>(matrix.cols, 0.0)};
    for (std::size_t i = 0; i < matrix.rows; ++i)
        for (std::size_t j = 0; j < matrix.cols; ++j) {
            f.red[i] += matrix.at(i, j);
            f.blue[j] += matrix.at(i, j);
        }
    for (auto& r : f.red) r /= static_cast<double>(matrix.cols);
    for (auto& b : f.blue) b = -b / static_cast<double>(matrix.rows);
    return f;
}

void CoevoConfig::validate() const {
    red.validate();
    blue.validate();
    if (red_rep.side != Side::Red || blue_rep.side != Side::Blue) throw Error("CoevoConfig: representation sides swapped");
    if (red.steps != blue.steps || red.repetitions != blue.repetitions || red.iterations != blue.iterations)
        throw Error("CoevoConfig: steps, repetitions and iterations must match across sides");
}

namespace {

std::vector<const sim::TeamPolicy*> policies(const evo::Population& pop) {
    std::vector<const sim::TeamPolicy*> out;
    for (const auto& m : pop.individuals()) out.push_back(m.team.get());
    return out;
}

std::vector<std::optional<double>> raw_scores(const std::vector<double>& meu, const std::vector<bool>& faulted) {
    std::vector<std::optional<double>> raw(meu.size());
    for (std::size_t i = 0; i < meu.size(); ++i)
        if (!faulted[i]) raw[i] = meu[i];
    return raw;
}

evo::TraceRow make_row(const CoevoOptions& options, int it, Side side, const std::string& label,
                       const evo::Population& pop, std::size_t episodes, double wall) {
    evo::TraceRow row;
    row.trial = options.trial;
    row.iteration = it;
    row.side = side;
    row.algorithm = label;
    row.best = pop.best_fitness();
    row.mean = pop.mean_fitness();
    row.episodes = episodes;
    row.wall_time = wall;
    return row;
}

} // namespace

CoevoTraces coevolve(const CoevoConfig& config, const CoevoOptions& options) {
    config.validate();
    const sim::ScenarioConfig scenario = evo::scenario_for(config.red, options.scenario);
    const std::uint64_t seed = config.red.seed;
    evo::Population red(config.red, config.red_rep, derive_seed(seed, {1, 0}), options.red_mutator);
    evo::Population blue(config.blue, config.blue_rep, derive_seed(seed, {1, 1}), options.blue_mutator);
    const std::string label = config.label.empty()
                                  ? std::string(evo::algorithm_name(config.red_rep.algorithm)) + "-C"
                                  : config.label;

    CoevoTraces traces;
    for (int it = 0; it < config.red.iterations; ++it) {
        const auto start = std::chrono::steady_clock::now();
        red.prepare();
        blue.prepare();
        const PayoffMatrix matrix = all_vs_all(policies(red), policies(blue), scenario, config.red.repetitions, seed, it,
                                               config.red.threads);
        const MeuFitness meu = mean_expected_utility(matrix);
        red.assign(raw_scores(meu.red, matrix.red_faulted));
        blue.assign(raw_scores(meu.blue, matrix.blue_faulted));

        const double wall = options.record_wall_time
                                ? std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
                                : 0.0;
        traces.red.push_back(make_row(options, it, Side::Red, label, red, matrix.episodes, wall));
        traces.blue.push_back(make_row(options, it, Side::Blue, label, blue, matrix.episodes, wall));
        if (options.observer) options.observer(CoevoGeneration{it, &red, &blue, &matrix});
        if (it + 1 < config.red.iterations) {
            red.advance(false);
            blue.advance(false);
        }
    }
    return traces;
}

} // namespace cyberevo::coevo
