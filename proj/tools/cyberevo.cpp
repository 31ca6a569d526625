#include "cyberevo/harness/experiment.hpp"
#include "cyberevo/harness/trace_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

using namespace cyberevo;

namespace {

struct RunArgs {
    std::string target;
    std::optional<std::uint64_t> seed;
    std::optional<int> iterations;
    std::optional<int> trials;
    std::optional<std::size_t> population;
    std::optional<int> steps;
    std::optional<std::size_t> threads;
    std::string output = "traces";
    bool mock_llm = false;
    std::optional<std::string> llm_url;
    std::optional<std::string> llm_model;
    std::optional<int> llm_timeout_ms;
    bool record_wall_time = false;
    bool dump_payoff = false;
    bool quiet = false;
};

int run(const RunArgs& a) {
    const std::filesystem::path target(a.target);
    harness::ExperimentSpec spec = std::filesystem::is_regular_file(target) ? harness::ExperimentSpec::load(target)
                                                                             : harness::ExperimentSpec::from_name(a.target);
    if (a.seed) spec.seed = *a.seed;
    if (a.iterations) spec.evo.iterations = *a.iterations;
    if (a.trials) spec.evo.trials = *a.trials;
    if (a.population) spec.evo.population = *a.population;
    if (a.steps) spec.evo.steps = *a.steps;
    if (a.threads) spec.evo.threads = *a.threads;
    if (a.mock_llm) spec.llm.backend = harness::LlmBackend::Mock;
    if (a.llm_url) spec.llm.http.url = *a.llm_url;
    if (a.llm_model) spec.llm.http.model = *a.llm_model;
    if (a.llm_timeout_ms) spec.llm.http.timeout = std::chrono::milliseconds(*a.llm_timeout_ms);
    spec.validate();

    harness::RunSettings settings;
    settings.output_dir = a.output;
    settings.record_wall_time = a.record_wall_time;
    settings.dump_payoff = a.dump_payoff;
    if (!a.quiet) settings.log = [](const std::string& line) { std::cerr << line << '\n'; };
    const auto result = harness::run_experiment(spec, settings);
    std::cout << result.trace_path.string() << '\n';
    if (result.llm_report_path) std::cout << result.llm_report_path->string() << '\n';
    return 0;
}

int summarize(const std::vector<std::string>& files, const std::string& output) {
    std::vector<evo::FitnessTrace> traces;
    for (const auto& f : files) traces.push_back(harness::read_trace(f));
    const auto rows = harness::summarize(traces);
    const std::string report = harness::dampening_report(harness::dampening(rows));
    if (output.empty()) {
        std::cout << harness::summary_csv(rows);
        std::cerr << report;
    } else {
        harness::write_file_atomic(output, harness::summary_csv(rows));
        std::cout << report;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evolve and coevolve red/blue team controllers in a simulated network defense scenario"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Run an experiment by name or from a spec file");
    run_cmd->add_option("experiment", run_args.target, "Spec file or experiment name (see list-experiments)")->required();
    run_cmd->add_option("--seed", run_args.seed, "Master seed");
    run_cmd->add_option("--iterations", run_args.iterations, "Generations per trial");
    run_cmd->add_option("--trials", run_args.trials, "Independent trials");
    run_cmd->add_option("--population", run_args.population, "Population size");
    run_cmd->add_option("--steps", run_args.steps, "Episode length");
    run_cmd->add_option("--threads", run_args.threads, "Worker threads (0 = all cores)");
    run_cmd->add_option("-o,--output", run_args.output, "Output directory")->capture_default_str();
    run_cmd->add_flag("--mock-llm", run_args.mock_llm, "Use the offline mock LLM backend");
    run_cmd->add_option("--llm-url", run_args.llm_url, "OpenAI-compatible base URL");
    run_cmd->add_option("--llm-model", run_args.llm_model, "Model name");
    run_cmd->add_option("--llm-timeout-ms", run_args.llm_timeout_ms, "Per-call timeout");
    run_cmd->add_flag("--record-wall-time", run_args.record_wall_time, "Fill the wall_time column");
    run_cmd->add_flag("--dump-payoff", run_args.dump_payoff, "Write coevolution payoff matrices");
    run_cmd->add_flag("-q,--quiet", run_args.quiet, "No progress output");

    std::vector<std::string> trace_files;
    std::string summary_out;
    auto* sum_cmd = app.add_subcommand("summarize", "Cross-trial means of trace files plus the dampening report");
    sum_cmd->add_option("traces", trace_files, "Trace CSV files")->required()->check(CLI::ExistingFile);
    sum_cmd->add_option("-o,--output", summary_out, "Summary CSV path (default: stdout)");

    auto* list_cmd = app.add_subcommand("list-experiments", "Print every runnable experiment name");

    CLI11_PARSE(app, argc, argv);
    try {
        if (run_cmd->parsed()) return run(run_args);
        if (sum_cmd->parsed()) return summarize(trace_files, summary_out);
        if (list_cmd->parsed()) {
            for (const auto& n : harness::experiment_names()) std::cout << n << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
