#include "cyberevo/evo/operators.hpp"

#include <algorithm>

namespace cyberevo::evo {

namespace {

double random_gene(Encoding e, Rng& rng) {
    switch (e) {
    case Encoding::Continuous: return rng.uniform01();
    case Encoding::Discrete4: return static_cast<double>(rng.uniform_int(0, 3));
    case Encoding::Codon: return static_cast<double>(rng.uniform_int(0, 255));
    }
    return 0.0;
}

} // namespace

Genome random_genome(Encoding e, std::size_t length, Rng& rng) {
    Genome g(length);
    for (auto& x : g) x = random_gene(e, rng);
    return g;
}

std::size_t tournament_select(std::span<const std::optional<double>> fitness, std::size_t k, Rng& rng) {
    if (fitness.empty()) throw Error("tournament_select: empty population");
    if (k == 0) throw Error("tournament_select: k must be positive");
    std::size_t best = rng.index(fitness.size());
    if (!fitness[best]) throw Error("tournament_select: unevaluated individual");
    for (std::size_t i = 1; i < k; ++i) {
        const std::size_t c = rng.index(fitness.size());
        if (!fitness[c]) throw Error("tournament_select: unevaluated individual");
        if (*fitness[c] > *fitness[best]) best = c;
    }
    return best;
}

std::pair<Genome, Genome> crossover_at(const Genome& a, const Genome& b, std::size_t cut) {
    if (a.size() != b.size()) throw Error("crossover: genome lengths differ");
    if (cut > a.size()) throw Error("crossover: cut beyond genome");
    Genome x = a, y = b;
    std::swap_ranges(x.begin() + static_cast<std::ptrdiff_t>(cut), x.end(), y.begin() + static_cast<std::ptrdiff_t>(cut));
    return {std::move(x), std::move(y)};
}

std::pair<Genome, Genome> one_point_crossover(const Genome& a, const Genome& b, double p, Rng& rng) {
    if (a.size() != b.size()) throw Error("crossover: genome lengths differ");
    if (a.size() < 2 || !rng.bernoulli(p)) return {a, b};
    return crossover_at(a, b, 1 + rng.index(a.size() - 1));
}

Genome mutate(Genome genome, Encoding e, double p, double sigma, Rng& rng) {
    for (auto& g : genome) {
        if (!rng.bernoulli(p)) continue;
        if (e == Encoding::Continuous) g = std::clamp(g + rng.normal(0.0, sigma), 0.0, 1.0);
        else g = random_gene(e, rng);
    }
    return genome;
}

double gene_weight(double gene, Encoding e) noexcept { return e == Encoding::Discrete4 ? gene * 0.25 : gene; }

} // namespace cyberevo::evo
