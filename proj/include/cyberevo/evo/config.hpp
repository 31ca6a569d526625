#pragma once

#include "cyberevo/common.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace cyberevo::evo {

enum class Algorithm : std::uint8_t { ES, GA, GE, GELLM };

/// Gene alphabet: reals in [0,1], integers {0..3}, or codons {0..255}.
enum class Encoding : std::uint8_t { Continuous, Discrete4, Codon };

std::string_view algorithm_name(Algorithm a) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;
std::string_view encoding_name(Encoding e) noexcept;
Encoding encoding_for(Algorithm a) noexcept;
/// GA and GE recombine; ES varies by mutation alone.
bool uses_crossover(Algorithm a) noexcept;
/// Genome length used when the config leaves it at 0: 180 matrix, 1000 grammar.
std::size_t default_genome_length(Algorithm a) noexcept;

struct EvoConfig {
    std::size_t population = 10;
    std::size_t elite = 1;
    std::size_t tournament = 2;
    int iterations = 20;
    double crossover_prob = 0.5;
    double mutation_prob = 0.5;
    int steps = 75;
    int repetitions = 2;
    int trials = 6;
    /// 0 selects default_genome_length for the algorithm.
    std::size_t genome_length = 0;
    double sigma = 0.1;
    int max_wraps = 2;
    int retry_cap = 100;
    double fault_margin = 10.0;
    /// With GE-LLM, the phenotype mutation replaces integer mutation.
    bool llm_replaces_mutation = true;
    /// Evaluation workers; 0 uses every hardware thread.
    std::size_t threads = 0;
    std::uint64_t seed = 0;

    std::size_t length_for(Algorithm a) const noexcept { return genome_length ? genome_length : default_genome_length(a); }
    /// Throws Error on a non-positive field, elite > population or a probability outside [0,1].
    void validate() const;
};

} // namespace cyberevo::evo
