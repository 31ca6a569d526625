#pragma once

#include "cyberevo/coevo/coevolution.hpp"
#include "cyberevo/evo/evolution.hpp"
#include "cyberevo/llm/client.hpp"
#include "cyberevo/llm/mutation.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cyberevo::harness {

enum class LlmBackend : std::uint8_t { Http, Mock };

struct LlmSettings {
    LlmBackend backend = LlmBackend::Http;
    llm::HttpClientConfig http;
    /// Mock backend only: share of answers that are not code.
    double mock_invalid_rate = 0.0;
    /// Prompt template file; the shipped template when empty.
    std::string prompt_path;
};

/// One experiment of the design matrix. Names follow
/// `<ES|GA|GE|GE-LLM>-<B|R|C>[-TR|-TN|-TO|-TC|-OE][-O|-M]`: B evolves blue
/// against the fixed red FSM, R the reverse, C coevolves both; the grammar
/// variant applies to GE runs; O uses one controller per team, M (default)
/// one per agent.
struct ExperimentSpec {
    std::string name;
    evo::Algorithm algorithm = evo::Algorithm::GA;
    bool coevolution = false;
    /// Evolving side of a one-sided run.
    Side side = Side::Blue;
    ge::GrammarVariant variant = ge::GrammarVariant::Baseline;
    evo::TeamMode mode = evo::TeamMode::Many;
    evo::EvoConfig evo;
    std::uint64_t seed = 0;
    /// Scenario config file; built-in defaults when empty.
    std::string scenario_path;
    LlmSettings llm;

    /// Spec with every default for the named experiment. Throws Error on an unknown name.
    static ExperimentSpec from_name(std::string_view name);
    /// `key = value` spec text: `experiment` names the experiment, other keys
    /// override its defaults. Relative paths resolve against `base_dir`.
    static ExperimentSpec parse(std::string_view text, const std::filesystem::path& base_dir = {},
                                std::string_view origin = "<spec>");
    static ExperimentSpec load(const std::filesystem::path& path);

    void validate() const;
    evo::Representation representation(Side s) const;
};

/// Canonical experiment name for the given fields.
std::string experiment_name(evo::Algorithm a, bool coevolution, Side side, ge::GrammarVariant v, evo::TeamMode m);

/// Every runnable experiment name: the design matrix plus grammar and
/// controller-count variations.
std::vector<std::string> experiment_names();

/// Trial t of an experiment with master seed m runs with trial seed derive_seed(m, {t}).
std::uint64_t trial_seed(std::uint64_t master, int trial) noexcept;

struct RunSettings {
    std::filesystem::path output_dir = ".";
    bool record_wall_time = false;
    /// Also write every coevolution payoff matrix.
    bool dump_payoff = false;
    std::function<void(const std::string&)> log;
};

struct RunResult {
    std::filesystem::path trace_path;
    evo::FitnessTrace trace;
    std::optional<llm::LlmStats> llm_stats;
    std::optional<std::filesystem::path> llm_report_path;
};

/// Runs every trial and writes `<output_dir>/<name>.csv` atomically.
RunResult run_experiment(const ExperimentSpec& spec, const RunSettings& settings = {});

/// Runs one trial without writing anything.
evo::FitnessTrace run_trial(const ExperimentSpec& spec, int trial, llm::LlmStats* llm_stats = nullptr,
                            std::vector<std::pair<int, coevo::PayoffMatrix>>* payoffs = nullptr,
                            bool record_wall_time = false);

} // namespace cyberevo::harness
