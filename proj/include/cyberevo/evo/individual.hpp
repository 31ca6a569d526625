#pragma once

#include "cyberevo/ctrl/controller.hpp"
#include "cyberevo/evo/operators.hpp"
#include "cyberevo/ge/derivation.hpp"
#include "cyberevo/ge/variants.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cyberevo::evo {

/// One controller for the whole team, or one per agent slot.
enum class TeamMode : std::uint8_t { One, Many };

std::string_view team_mode_name(TeamMode m) noexcept;

/// How a genome becomes a team controller.
struct Representation {
    Side side = Side::Blue;
    Algorithm algorithm = Algorithm::GA;
    TeamMode mode = TeamMode::Many;
    ge::GrammarVariant variant = ge::GrammarVariant::Baseline;
    int max_wraps = ge::kDefaultMaxWraps;

    Encoding encoding() const noexcept { return encoding_for(algorithm); }
    bool grammar_based() const noexcept { return encoding() == Encoding::Codon; }
    /// 1 or the side's team size.
    std::size_t controllers() const noexcept;
    const ge::Grammar& grammar() const;
    /// Shortest genome that decodes: one matrix per controller, or one codon each.
    std::size_t min_genome_length() const;
};

struct Individual {
    Genome genome;
    /// Derivation trees, one per controller (grammar representations only).
    std::vector<std::shared_ptr<const ge::DerivationNode>> programs;
    /// Null until decoded, and for invalid individuals.
    std::shared_ptr<const sim::TeamPolicy> team;
    std::optional<double> fitness;
    /// Phenotype was edited directly; `programs` is authoritative, the genome stale.
    bool detached = false;
    /// Set when decoding was attempted and failed.
    bool invalid = false;

    bool decoded() const noexcept { return team != nullptr; }
};

/// Uniform random genome of the representation's encoding; not yet decoded.
Individual random_individual(const Representation& rep, std::size_t length, Rng& rng);

/// Builds the team controller. Matrix genomes fill each controller's live
/// cells from consecutive genes; grammar genomes are cut into one equal
/// segment per controller, each mapped separately. Detached individuals are
/// built from their programs. Returns false (and marks the individual
/// invalid) when any segment fails to map.
bool decode(Individual& ind, const Representation& rep);

/// Team controller from derivation trees of the representation's grammar.
std::shared_ptr<const sim::TeamPolicy> team_from_programs(
    const Representation& rep, const std::vector<std::shared_ptr<const ge::DerivationNode>>& programs);

/// Program text of each controller, for display.
std::vector<std::string> render_programs(const Individual& ind, const Representation& rep);

/// Variation applied to the phenotype instead of the genome (GE-LLM).
class PhenotypeMutator {
  public:
    virtual ~PhenotypeMutator() = default;
    /// Returns a mutated copy: detached when accepted, otherwise invalid.
    virtual Individual mutate(const Individual& ind, const Representation& rep, Rng& rng) = 0;
};

} // namespace cyberevo::evo
