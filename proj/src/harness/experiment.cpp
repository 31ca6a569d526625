#include "cyberevo/harness/experiment.hpp"

#include "cyberevo/harness/trace_io.hpp"
#include "cyberevo/kv_config.hpp"
#include "cyberevo/parallel.hpp"

#include <cstdio>
#include <mutex>

namespace cyberevo::harness {

namespace {

constexpr std::array<ge::GrammarVariant, 5> kNamedVariants{ge::GrammarVariant::TR, ge::GrammarVariant::TN,
                                                          ge::GrammarVariant::TO, ge::GrammarVariant::TC,
                                                          ge::GrammarVariant::OE};

bool grammar_algorithm(evo::Algorithm a) { return evo::encoding_for(a) == evo::Encoding::Codon; }

std::unique_ptr<llm::CompletionClient> make_client(const LlmSettings& s, const ge::Grammar& grammar, std::uint64_t seed) {
    if (s.backend == LlmBackend::Mock) return std::make_unique<llm::MockMutationClient>(grammar, seed, s.mock_invalid_rate);
    return std::make_unique<llm::HttpCompletionClient>(s.http);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace

std::string experiment_name(evo::Algorithm a, bool coevolution, Side side, ge::GrammarVariant v, evo::TeamMode m) {
    std::string name(evo::algorithm_name(a));
    name += coevolution ? "-C" : side == Side::Blue ? "-B" : "-R";
    if (v != ge::GrammarVariant::Baseline) name += "-" + std::string(ge::variant_name(v));
    if (m == evo::TeamMode::One) name += "-O";
    return name;
}

std::vector<std::string> experiment_names() {
    using evo::Algorithm;
    std::vector<std::string> names;
    const std::array<std::pair<bool, Side>, 3> modes{{{false, Side::Blue}, {false, Side::Red}, {true, Side::Red}}};
    for (auto a : {Algorithm::ES, Algorithm::GA, Algorithm::GE, Algorithm::GELLM})
        for (auto [coev, side] : modes) names.push_back(experiment_name(a, coev, side, ge::GrammarVariant::Baseline, evo::TeamMode::Many));
    for (auto a : {Algorithm::GE, Algorithm::GELLM})
        for (auto v : kNamedVariants)
            for (auto [coev, side] : modes) names.push_back(experiment_name(a, coev, side, v, evo::TeamMode::Many));
    for (auto a : {Algorithm::ES, Algorithm::GA, Algorithm::GE, Algorithm::GELLM})
        for (auto [coev, side] : modes) names.push_back(experiment_name(a, coev, side, ge::GrammarVariant::Baseline, evo::TeamMode::One));
    return names;
}

std::uint64_t trial_seed(std::uint64_t master, int trial) noexcept {
    return derive_seed(master, {static_cast<std::uint64_t>(trial)});
}

ExperimentSpec ExperimentSpec::from_name(std::string_view name) {
    const std::string original(name);
    auto fail = [&](const std::string& why) -> Error { return Error("experiment '" + original + "': " + why); };
    ExperimentSpec s;
    std::vector<std::string_view> parts = split(name, '-');
    std::size_t i = 0;
    if (parts.size() >= 2 && parts[0] == "GE" && parts[1] == "LLM") {
        s.algorithm = evo::Algorithm::GELLM;
        i = 2;
    } else if (!parts.empty()) {
        const auto a = evo::parse_algorithm(parts[0]);
        if (!a || *a == evo::Algorithm::GELLM) throw fail("unknown algorithm");
        s.algorithm = *a;
        i = 1;
    }
    if (i >= parts.size()) throw fail("missing B, R or C");
    if (parts[i] == "B") s.side = Side::Blue;
    else if (parts[i] == "R") s.side = Side::Red;
    else if (parts[i] == "C") s.coevolution = true;
    else throw fail("expected B, R or C after the algorithm");
    bool have_variant = false, have_mode = false;
    for (++i; i < parts.size(); ++i) {
        if (parts[i] == "O" || parts[i] == "M") {
            if (have_mode) throw fail("controller count given twice");
            have_mode = true;
            s.mode = parts[i] == "O" ? evo::TeamMode::One : evo::TeamMode::Many;
        } else if (auto v = ge::parse_variant(parts[i]); v && *v != ge::GrammarVariant::Baseline) {
            if (have_variant || have_mode) throw fail("grammar variant out of place");
            if (!grammar_algorithm(s.algorithm)) throw fail("grammar variants apply to GE runs only");
            have_variant = true;
            s.variant = *v;
        } else {
            throw fail("unknown suffix '" + std::string(parts[i]) + "'");
        }
    }
    s.name = experiment_name(s.algorithm, s.coevolution, s.side, s.variant, s.mode);
    return s;
}

ExperimentSpec ExperimentSpec::parse(std::string_view text, const std::filesystem::path& base_dir, std::string_view origin) {
    const auto kv = KeyValueConfig::parse(text, origin);
    const auto name = kv.get("experiment");
    if (!name) throw Error(std::string(origin) + ": missing 'experiment' key");
    ExperimentSpec s = from_name(*name);
    auto& e = s.evo;
    s.seed = static_cast<std::uint64_t>(kv.get_int("seed", 0));
    e.trials = static_cast<int>(kv.get_int("trials", e.trials));
    e.iterations = static_cast<int>(kv.get_int("iterations", e.iterations));
    e.population = static_cast<std::size_t>(kv.get_int("population", static_cast<long long>(e.population)));
    e.elite = static_cast<std::size_t>(kv.get_int("elite", static_cast<long long>(e.elite)));
    e.tournament = static_cast<std::size_t>(kv.get_int("tournament", static_cast<long long>(e.tournament)));
    e.crossover_prob = kv.get_double("crossover_prob", e.crossover_prob);
    e.mutation_prob = kv.get_double("mutation_prob", e.mutation_prob);
    e.steps = static_cast<int>(kv.get_int("steps", e.steps));
    e.repetitions = static_cast<int>(kv.get_int("repetitions", e.repetitions));
    e.genome_length = static_cast<std::size_t>(kv.get_int("genome_length", static_cast<long long>(e.genome_length)));
    e.sigma = kv.get_double("sigma", e.sigma);
    e.max_wraps = static_cast<int>(kv.get_int("max_wraps", e.max_wraps));
    e.retry_cap = static_cast<int>(kv.get_int("retry_cap", e.retry_cap));
    e.fault_margin = kv.get_double("fault_margin", e.fault_margin);
    e.llm_replaces_mutation = kv.get_bool("llm_replaces_mutation", e.llm_replaces_mutation);
    e.threads = static_cast<std::size_t>(kv.get_int("threads", static_cast<long long>(e.threads)));
    auto resolve = [&](const std::string& p) { return p.empty() || base_dir.empty() ? p : (base_dir / p).string(); };
    s.scenario_path = resolve(kv.get_string("scenario", ""));

    const std::string backend = kv.get_string("llm.backend", "http");
    if (backend == "mock") s.llm.backend = LlmBackend::Mock;
    else if (backend == "http") s.llm.backend = LlmBackend::Http;
    else throw Error(std::string(origin) + ": llm.backend must be http or mock");
    s.llm.http.url = kv.get_string("llm.url", s.llm.http.url);
    s.llm.http.model = kv.get_string("llm.model", s.llm.http.model);
    s.llm.http.api_key_env = kv.get_string("llm.api_key_env", s.llm.http.api_key_env);
    s.llm.http.timeout = std::chrono::milliseconds(kv.get_int("llm.timeout_ms", s.llm.http.timeout.count()));
    s.llm.http.temperature = kv.get_double("llm.temperature", s.llm.http.temperature);
    s.llm.mock_invalid_rate = kv.get_double("llm.mock_invalid_rate", s.llm.mock_invalid_rate);
    s.llm.prompt_path = resolve(kv.get_string("llm.prompt", ""));

    if (const auto unused = kv.unused_keys(); !unused.empty()) {
        std::string list;
        for (const auto& k : unused) list += (list.empty() ? "" : ", ") + k;
        throw Error(std::string(origin) + ": unknown keys: " + list);
    }
    s.validate();
    return s;
}

ExperimentSpec ExperimentSpec::load(const std::filesystem::path& path) {
    return parse(read_file(path.string()), path.parent_path(), path.string());
}

evo::Representation ExperimentSpec::representation(Side s) const {
    return {s, algorithm, mode, variant, evo.max_wraps};
}

void ExperimentSpec::validate() const {
    evo.validate();
    if (variant != ge::GrammarVariant::Baseline && !grammar_algorithm(algorithm))
        throw Error(name + ": grammar variants apply to GE runs only");
    for (Side s : {Side::Red, Side::Blue}) {
        if (!coevolution && s != side) continue;
        const auto rep = representation(s);
        if (evo.length_for(algorithm) < rep.min_genome_length())
            throw Error(name + ": genome length " + std::to_string(evo.length_for(algorithm)) + " is below " +
                        std::to_string(rep.min_genome_length()) + " for " + std::string(to_string(s)));
    }
    if (llm.mock_invalid_rate < 0.0 || llm.mock_invalid_rate > 1.0) throw Error(name + ": llm.mock_invalid_rate must be in [0,1]");
    if (llm.http.timeout.count() <= 0) throw Error(name + ": llm.timeout_ms must be positive");
}

evo::FitnessTrace run_trial(const ExperimentSpec& spec, int trial, llm::LlmStats* llm_stats,
                            std::vector<std::pair<int, coevo::PayoffMatrix>>* payoffs, bool record_wall_time) {
    spec.validate();
    evo::EvoConfig cfg = spec.evo;
    cfg.seed = trial_seed(spec.seed, trial);
    std::optional<sim::ScenarioConfig> scenario;
    if (!spec.scenario_path.empty()) scenario = sim::ScenarioConfig::load(spec.scenario_path);
    const sim::ScenarioConfig* scenario_ptr = scenario ? &*scenario : nullptr;
    const llm::PromptTemplate tmpl =
        spec.llm.prompt_path.empty() ? llm::PromptTemplate::standard() : llm::PromptTemplate::load(spec.llm.prompt_path);

    std::array<std::unique_ptr<llm::CompletionClient>, 2> clients;
    std::array<std::unique_ptr<llm::LlmMutator>, 2> mutators;
    if (spec.algorithm == evo::Algorithm::GELLM)
        for (Side s : {Side::Red, Side::Blue}) {
            if (!spec.coevolution && s != spec.side) continue;
            const auto i = static_cast<std::size_t>(s);
            clients[i] = make_client(spec.llm, spec.representation(s).grammar(),
                                     derive_seed(cfg.seed, {2, static_cast<std::uint64_t>(s)}));
            mutators[i] = std::make_unique<llm::LlmMutator>(*clients[i], tmpl);
        }
    auto collect_stats = [&] {
        if (!llm_stats) return;
        for (const auto& m : mutators)
            if (m) llm_stats->merge(m->stats());
    };

    if (!spec.coevolution) {
        const auto adversary = ctrl::fsm_adversary(opposite(spec.side));
        evo::RunOptions opts;
        opts.scenario = scenario_ptr;
        opts.mutator = mutators[static_cast<std::size_t>(spec.side)].get();
        opts.trial = trial;
        opts.label = spec.name;
        opts.record_wall_time = record_wall_time;
        auto trace = evo::evolve_one_sided(cfg, spec.representation(spec.side), *adversary, opts);
        collect_stats();
        return trace;
    }
    coevo::CoevoConfig cc{cfg, cfg, spec.representation(Side::Red), spec.representation(Side::Blue), spec.name};
    coevo::CoevoOptions opts;
    opts.scenario = scenario_ptr;
    opts.red_mutator = mutators[static_cast<std::size_t>(Side::Red)].get();
    opts.blue_mutator = mutators[static_cast<std::size_t>(Side::Blue)].get();
    opts.trial = trial;
    opts.record_wall_time = record_wall_time;
    if (payoffs) opts.observer = [&](const coevo::CoevoGeneration& g) { payoffs->emplace_back(g.iteration, *g.matrix); };
    auto traces = coevo::coevolve(cc, opts);
    collect_stats();
    evo::FitnessTrace merged;
    for (std::size_t it = 0; it < traces.red.size(); ++it) {
        merged.push_back(traces.red[it]);
        merged.push_back(traces.blue[it]);
    }
    return merged;
}

RunResult run_experiment(const ExperimentSpec& spec, const RunSettings& settings) {
    spec.validate();
    const int trials = spec.evo.trials;
    const bool trials_in_parallel = trials > 1 && resolve_threads(spec.evo.threads) > 1;
    ExperimentSpec inner = spec;
    if (trials_in_parallel) inner.evo.threads = 1;

    std::vector<evo::FitnessTrace> traces(static_cast<std::size_t>(trials));
    std::vector<llm::LlmStats> stats(static_cast<std::size_t>(trials));
    std::vector<std::vector<std::pair<int, coevo::PayoffMatrix>>> payoffs(static_cast<std::size_t>(trials));
    std::mutex log_mutex;
    parallel_for(static_cast<std::size_t>(trials), trials_in_parallel ? spec.evo.threads : 1, [&](std::size_t t) {
        const int trial = static_cast<int>(t);
        traces[t] = run_trial(inner, trial, &stats[t], settings.dump_payoff && spec.coevolution ? &payoffs[t] : nullptr,
                              settings.record_wall_time);
        if (settings.log) {
            const auto& last = traces[t].back();
            std::lock_guard lock(log_mutex);
            settings.log(spec.name + " trial " + std::to_string(trial) + " done: final best " + format_double(last.best) +
                         " (" + std::string(to_string(last.side)) + ")");
        }
    });

    RunResult result;
    for (const auto& t : traces) result.trace.insert(result.trace.end(), t.begin(), t.end());
    const auto& e = spec.evo;
    const std::vector<std::string> header{
        "experiment=" + spec.name + " algorithm=" + std::string(evo::algorithm_name(spec.algorithm)) +
            " controllers=" + std::string(evo::team_mode_name(spec.mode)) +
            " grammar=" + std::string(ge::variant_name(spec.variant)),
        "master_seed=" + std::to_string(spec.seed) + " trials=" + std::to_string(e.trials) +
            " iterations=" + std::to_string(e.iterations) + " population=" + std::to_string(e.population) +
            " elite=" + std::to_string(e.elite) + " tournament=" + std::to_string(e.tournament) +
            " crossover_prob=" + format_double(e.crossover_prob) + " mutation_prob=" + format_double(e.mutation_prob) +
            " steps=" + std::to_string(e.steps) + " repetitions=" + std::to_string(e.repetitions) +
            " genome_length=" + std::to_string(e.length_for(spec.algorithm)),
        "seeds: trial_seed=derive_seed(master_seed,{trial}); one-sided episode seed of individual i at iteration t, "
        "repetition r = derive_seed(derive_seed(trial_seed,{0,t,i}),{r}); coevolution pairing (i,j) = "
        "derive_seed(trial_seed,{0,t,i,j,r}); derive_seed chains SplitMix64",
    };
    result.trace_path = settings.output_dir / (spec.name + ".csv");
    write_file_atomic(result.trace_path, trace_csv(result.trace, header));

    if (settings.dump_payoff && spec.coevolution) {
        std::string csv = "trial,iteration,red,blue,red_reward\n";
        for (std::size_t t = 0; t < payoffs.size(); ++t)
            for (const auto& [it, m] : payoffs[t])
                for (std::size_t i = 0; i < m.rows; ++i)
                    for (std::size_t j = 0; j < m.cols; ++j)
                        csv += std::to_string(t) + ',' + std::to_string(it) + ',' + std::to_string(i) + ',' +
                               std::to_string(j) + ',' + format_double(m.at(i, j)) + '\n';
        write_file_atomic(settings.output_dir / (spec.name + "_payoff.csv"), csv);
    }
    if (spec.algorithm == evo::Algorithm::GELLM) {
        llm::LlmStats all;
        for (const auto& s : stats) all.merge(s);
        result.llm_stats = all;
        const std::string model = spec.llm.backend == LlmBackend::Mock ? "mock-mutation" : spec.llm.http.model;
        const std::string report = all.calls() ? llm::format_report(llm::summarize_stats(all), model) + "\n"
                                               : "model " + model + ": no LLM calls\n";
        result.llm_report_path = settings.output_dir / (spec.name + "_llm.txt");
        write_file_atomic(*result.llm_report_path, report);
    }
    return result;
}

} // namespace cyberevo::harness
