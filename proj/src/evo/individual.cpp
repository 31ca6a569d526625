#include "cyberevo/evo/individual.hpp"

#include "cyberevo/ge/ast.hpp"
#include "cyberevo/ge/program_text.hpp"

namespace cyberevo::evo {

namespace {

using ControllerList = std::vector<std::shared_ptr<const ctrl::AgentController>>;

std::shared_ptr<const ctrl::FsmTable> shared_table(Side side) {
    return {&ctrl::FsmTable::standard(side), [](const ctrl::FsmTable*) {}};
}

std::shared_ptr<const sim::TeamPolicy> decode_matrix(const Genome& genome, const Representation& rep) {
    const auto table = shared_table(rep.side);
    const std::size_t cells = table->live_cells();
    ControllerList controllers;
    std::vector<double> weights(cells);
    for (std::size_t c = 0; c < rep.controllers(); ++c) {
        for (std::size_t i = 0; i < cells; ++i) weights[i] = gene_weight(genome[c * cells + i], rep.encoding());
        controllers.push_back(std::make_shared<ctrl::FsmController>(ctrl::MatrixController(table, weights),
                                                                    ctrl::StateClassifier::standard(rep.side)));
    }
    return std::make_shared<ctrl::TeamController>(rep.side, std::move(controllers));
}

} // namespace

std::string_view team_mode_name(TeamMode m) noexcept { return m == TeamMode::One ? "one" : "many"; }

std::size_t Representation::controllers() const noexcept {
    return mode == TeamMode::One ? 1 : ctrl::team_size(side);
}

const ge::Grammar& Representation::grammar() const { return ge::controller_grammar(side, variant); }

std::size_t Representation::min_genome_length() const {
    if (grammar_based()) return controllers();
    return controllers() * ctrl::FsmTable::standard(side).live_cells();
}

Individual random_individual(const Representation& rep, std::size_t length, Rng& rng) {
    Individual ind;
    ind.genome = random_genome(rep.encoding(), length, rng);
    return ind;
}

std::shared_ptr<const sim::TeamPolicy> team_from_programs(
    const Representation& rep, const std::vector<std::shared_ptr<const ge::DerivationNode>>& programs) {
    if (programs.size() != rep.controllers()) throw Error("team_from_programs: wrong number of programs");
    ControllerList controllers;
    for (const auto& p : programs) controllers.push_back(std::make_shared<ctrl::RuleController>(ge::build_ast(*p, rep.side)));
    return std::make_shared<ctrl::TeamController>(rep.side, std::move(controllers));
}

bool decode(Individual& ind, const Representation& rep) {
    ind.team.reset();
    ind.invalid = false;
    if (ind.detached) {
        ind.team = team_from_programs(rep, ind.programs);
        return true;
    }
    if (ind.genome.size() < rep.min_genome_length())
        throw Error("decode: genome of " + std::to_string(ind.genome.size()) + " genes is shorter than " +
                    std::to_string(rep.min_genome_length()));
    if (!rep.grammar_based()) {
        ind.team = decode_matrix(ind.genome, rep);
        return true;
    }
    ind.programs.clear();
    const std::size_t segment = ind.genome.size() / rep.controllers();
    std::vector<ge::Codon> codons(segment);
    for (std::size_t c = 0; c < rep.controllers(); ++c) {
        for (std::size_t i = 0; i < segment; ++i) codons[i] = static_cast<ge::Codon>(ind.genome[c * segment + i]);
        auto tree = ge::map_genome(codons, rep.grammar(), rep.max_wraps);
        if (!tree) {
            ind.programs.clear();
            ind.invalid = true;
            return false;
        }
        ind.programs.push_back(std::make_shared<const ge::DerivationNode>(std::move(*tree)));
    }
    ind.team = team_from_programs(rep, ind.programs);
    return true;
}

std::vector<std::string> render_programs(const Individual& ind, const Representation& rep) {
    std::vector<std::string> out;
    for (const auto& p : ind.programs) out.push_back(ge::render_program(*p, rep.grammar()));
    return out;
}

} // namespace cyberevo::evo
