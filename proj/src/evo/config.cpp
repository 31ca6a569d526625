#include "cyberevo/evo/config.hpp"

#include <array>
#include <string>

namespace cyberevo::evo {

namespace {

constexpr std::array<std::string_view, 4> kAlgorithmNames{"ES", "GA", "GE", "GE-LLM"};

} // namespace

std::string_view algorithm_name(Algorithm a) noexcept { return kAlgorithmNames[static_cast<std::size_t>(a)]; }

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kAlgorithmNames.size(); ++i)
        if (kAlgorithmNames[i] == name) return static_cast<Algorithm>(i);
    return std::nullopt;
}

std::string_view encoding_name(Encoding e) noexcept {
    switch (e) {
    case Encoding::Continuous: return "continuous";
    case Encoding::Discrete4: return "discrete4";
    case Encoding::Codon: return "codon";
    }
    return "?";
}

Encoding encoding_for(Algorithm a) noexcept {
    switch (a) {
    case Algorithm::ES: return Encoding::Continuous;
    case Algorithm::GA: return Encoding::Discrete4;
    default: return Encoding::Codon;
    }
}

bool uses_crossover(Algorithm a) noexcept { return a != Algorithm::ES; }

std::size_t default_genome_length(Algorithm a) noexcept {
    return encoding_for(a) == Encoding::Codon ? 1000 : 180;
}

void EvoConfig::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw Error(std::string("EvoConfig: ") + what);
    };
    require(population > 0, "population must be positive");
    require(elite > 0 && elite <= population, "elite must be in [1, population]");
    require(tournament > 0, "tournament must be positive");
    require(iterations > 0, "iterations must be positive");
    require(steps > 0, "steps must be positive");
    require(repetitions > 0, "repetitions must be positive");
    require(trials > 0, "trials must be positive");
    require(crossover_prob >= 0.0 && crossover_prob <= 1.0, "crossover_prob must be in [0,1]");
    require(mutation_prob >= 0.0 && mutation_prob <= 1.0, "mutation_prob must be in [0,1]");
    require(sigma > 0.0, "sigma must be positive");
    require(max_wraps >= 0, "max_wraps must be non-negative");
    require(retry_cap > 0, "retry_cap must be positive");
    require(fault_margin > 0.0, "fault_margin must be positive");
}

} // namespace cyberevo::evo
