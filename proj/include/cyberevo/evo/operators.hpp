#pragma once

#include "cyberevo/evo/config.hpp"
#include "cyberevo/rng.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace cyberevo::evo {

/// Every encoding stores genes as doubles; discrete genes hold whole numbers.
using Genome = std::vector<double>;

/// Uniform random genome.
Genome random_genome(Encoding e, std::size_t length, Rng& rng);

/// Best of `k` uniform draws with replacement; ties keep the first drawn.
/// Every fitness must be set. Returns an index into `fitness`.
std::size_t tournament_select(std::span<const std::optional<double>> fitness, std::size_t k, Rng& rng);

/// Children of swapping the suffixes of `a` and `b` from `cut` on.
std::pair<Genome, Genome> crossover_at(const Genome& a, const Genome& b, std::size_t cut);

/// With probability p, crossover_at a uniform cut in [1, len-1]; otherwise copies.
std::pair<Genome, Genome> one_point_crossover(const Genome& a, const Genome& b, double p, Rng& rng);

/// Per gene with probability p: Gaussian step clamped to [0,1], or a uniform
/// redraw from the discrete alphabet.
Genome mutate(Genome genome, Encoding e, double p, double sigma, Rng& rng);

/// Maps a matrix gene to a cell weight: reals as is, discrete g to g/4.
double gene_weight(double gene, Encoding e) noexcept;

} // namespace cyberevo::evo
