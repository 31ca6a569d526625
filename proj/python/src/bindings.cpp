#include "cyberevo/ctrl/controller.hpp"
#include "cyberevo/ctrl/matrix.hpp"
#include "cyberevo/evo/evolution.hpp"
#include "cyberevo/ge/program_text.hpp"
#include "cyberevo/ge/variants.hpp"
#include "cyberevo/harness/experiment.hpp"
#include "cyberevo/harness/trace_io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace cyberevo;

namespace {

ge::GrammarVariant variant_from(const std::string& name) {
    const auto v = ge::parse_variant(name);
    if (!v) throw Error("unknown grammar variant '" + name + "'");
    return *v;
}

std::shared_ptr<const sim::TeamPolicy> named_team(const std::string& name, Side side) {
    if (name == "sleep") return ctrl::sleep_team(side);
    if (name == "fsm") return ctrl::fsm_adversary(side);
    throw Error("unknown team '" + name + "' (expected sleep or fsm)");
}

std::vector<evo::FitnessTrace> read_traces(const std::vector<std::filesystem::path>& paths) {
    std::vector<evo::FitnessTrace> traces;
    for (const auto& p : paths) traces.push_back(harness::read_trace(p));
    return traces;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Evolutionary red and blue team controllers for a simulated network defense scenario.";

    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    py::enum_<Side>(m, "Side").value("red", Side::Red).value("blue", Side::Blue);

    py::class_<evo::TraceRow>(m, "TraceRow")
        .def_readonly("trial", &evo::TraceRow::trial)
        .def_readonly("iteration", &evo::TraceRow::iteration)
        .def_readonly("side", &evo::TraceRow::side)
        .def_readonly("algorithm", &evo::TraceRow::algorithm)
        .def_readonly("best", &evo::TraceRow::best)
        .def_readonly("mean", &evo::TraceRow::mean)
        .def_readonly("episodes", &evo::TraceRow::episodes)
        .def_readonly("wall_time", &evo::TraceRow::wall_time)
        .def("__eq__", [](const evo::TraceRow& a, const evo::TraceRow& b) { return a == b; })
        .def("__repr__", [](const evo::TraceRow& r) {
            return "TraceRow(trial=" + std::to_string(r.trial) + ", iteration=" + std::to_string(r.iteration) +
                   ", side=" + std::string(to_string(r.side)) + ", algorithm='" + r.algorithm +
                   "', best=" + std::to_string(r.best) + ", mean=" + std::to_string(r.mean) + ")";
        });

    py::class_<harness::SummaryRow>(m, "SummaryRow")
        .def_readonly("algorithm", &harness::SummaryRow::algorithm)
        .def_readonly("side", &harness::SummaryRow::side)
        .def_readonly("iteration", &harness::SummaryRow::iteration)
        .def_readonly("trials", &harness::SummaryRow::trials)
        .def_readonly("best", &harness::SummaryRow::best)
        .def_readonly("mean", &harness::SummaryRow::mean);

    py::class_<harness::ExperimentSpec>(m, "ExperimentSpec")
        .def_static("from_name", &harness::ExperimentSpec::from_name, py::arg("name"))
        .def_static(
            "parse",
            [](const std::string& text, const std::filesystem::path& base_dir) {
                return harness::ExperimentSpec::parse(text, base_dir);
            },
            py::arg("text"), py::arg("base_dir") = std::filesystem::path{})
        .def_static("load", &harness::ExperimentSpec::load, py::arg("path"))
        .def_readonly("name", &harness::ExperimentSpec::name)
        .def_readonly("coevolution", &harness::ExperimentSpec::coevolution)
        .def_readonly("side", &harness::ExperimentSpec::side)
        .def_readwrite("seed", &harness::ExperimentSpec::seed)
        .def_property(
            "trials", [](const harness::ExperimentSpec& s) { return s.evo.trials; },
            [](harness::ExperimentSpec& s, int v) { s.evo.trials = v; })
        .def_property(
            "iterations", [](const harness::ExperimentSpec& s) { return s.evo.iterations; },
            [](harness::ExperimentSpec& s, int v) { s.evo.iterations = v; })
        .def_property(
            "population", [](const harness::ExperimentSpec& s) { return s.evo.population; },
            [](harness::ExperimentSpec& s, std::size_t v) { s.evo.population = v; })
        .def_property(
            "steps", [](const harness::ExperimentSpec& s) { return s.evo.steps; },
            [](harness::ExperimentSpec& s, int v) { s.evo.steps = v; })
        .def_property(
            "repetitions", [](const harness::ExperimentSpec& s) { return s.evo.repetitions; },
            [](harness::ExperimentSpec& s, int v) { s.evo.repetitions = v; })
        .def_property(
            "threads", [](const harness::ExperimentSpec& s) { return s.evo.threads; },
            [](harness::ExperimentSpec& s, std::size_t v) { s.evo.threads = v; })
        .def_property(
            "mock_llm", [](const harness::ExperimentSpec& s) { return s.llm.backend == harness::LlmBackend::Mock; },
            [](harness::ExperimentSpec& s, bool v) { s.llm.backend = v ? harness::LlmBackend::Mock : harness::LlmBackend::Http; })
        .def("validate", &harness::ExperimentSpec::validate)
        .def("__repr__", [](const harness::ExperimentSpec& s) { return "ExperimentSpec('" + s.name + "')"; });

    m.def("experiment_names", &harness::experiment_names);
    m.def("trial_seed", &harness::trial_seed, py::arg("master"), py::arg("trial"));

    m.def(
        "run_trial",
        [](const harness::ExperimentSpec& spec, int trial) { return harness::run_trial(spec, trial); },
        py::arg("spec"), py::arg("trial") = 0, py::call_guard<py::gil_scoped_release>(),
        "Runs one trial and returns its fitness trace.");

    m.def(
        "run_experiment",
        [](const harness::ExperimentSpec& spec, const std::filesystem::path& output_dir, bool record_wall_time,
           bool dump_payoff) {
            harness::RunSettings settings;
            settings.output_dir = output_dir;
            settings.record_wall_time = record_wall_time;
            settings.dump_payoff = dump_payoff;
            return harness::run_experiment(spec, settings).trace_path;
        },
        py::arg("spec"), py::arg("output_dir"), py::arg("record_wall_time") = false, py::arg("dump_payoff") = false,
        py::call_guard<py::gil_scoped_release>(), "Runs every trial, writes the trace CSV and returns its path.");

    m.def("read_trace", &harness::read_trace, py::arg("path"));
    m.def("trace_csv", [](const evo::FitnessTrace& t) { return harness::trace_csv(t); }, py::arg("rows"));
    m.def(
        "summarize", [](const std::vector<std::filesystem::path>& paths) { return harness::summarize(read_traces(paths)); },
        py::arg("paths"));
    m.def(
        "dampening_report",
        [](const std::vector<std::filesystem::path>& paths) {
            return harness::dampening_report(harness::dampening(harness::summarize(read_traces(paths))));
        },
        py::arg("paths"));

    m.def(
        "reward",
        [](const std::string& phase, const std::string& zone, const std::string& kind) {
            return sim::RewardTable::standard().at(phase, zone, kind);
        },
        py::arg("phase"), py::arg("zone"), py::arg("kind"), "Blue penalty for one event.");

    m.def(
        "play_episode",
        [](const std::string& red, const std::string& blue, std::uint64_t seed, int steps) {
            evo::EvoConfig cfg;
            cfg.steps = steps;
            const auto scenario = evo::scenario_for(cfg, nullptr);
            const auto r = sim::run_episode(scenario, *named_team(red, Side::Red), *named_team(blue, Side::Blue), seed);
            return py::make_tuple(r.red_reward, r.blue_reward);
        },
        py::arg("red") = "fsm", py::arg("blue") = "fsm", py::arg("seed") = 0, py::arg("steps") = 75,
        "Plays one episode between named teams (sleep or fsm); returns (red, blue) rewards.");

    m.def(
        "normalize_row", [](const std::vector<std::optional<double>>& row) { return ctrl::normalize_row(row); },
        py::arg("row"), "Action probabilities of a matrix row; None marks a disallowed action.");

    m.def(
        "grammar_text",
        [](Side side, const std::string& variant) { return ge::controller_grammar(side, variant_from(variant)).text(); },
        py::arg("side"), py::arg("variant") = "baseline");

    m.def(
        "map_genome",
        [](const std::vector<ge::Codon>& genome, Side side, const std::string& variant,
           int max_wraps) -> std::optional<std::string> {
            const auto& g = ge::controller_grammar(side, variant_from(variant));
            const auto tree = ge::map_genome(genome, g, max_wraps);
            if (!tree) return std::nullopt;
            return ge::render_program(*tree, g);
        },
        py::arg("genome"), py::arg("side"), py::arg("variant") = "baseline", py::arg("max_wraps") = ge::kDefaultMaxWraps,
        "Controller program of a codon genome, or None when the mapping is invalid.");

    m.def(
        "parse_program",
        [](const std::string& code, Side side, const std::string& variant) -> std::optional<std::string> {
            const auto& g = ge::controller_grammar(side, variant_from(variant));
            const auto tree = ge::parse_program(code, g);
            if (!tree) return std::nullopt;
            ge::build_ast(*tree, side);
            return ge::render_program(*tree, g);
        },
        py::arg("code"), py::arg("side"), py::arg("variant") = "baseline",
        "Canonical text of a controller program, or None when it is not in the grammar.");
}
