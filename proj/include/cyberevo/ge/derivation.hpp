#pragma once

#include "cyberevo/ge/grammar.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cyberevo::ge {

using Codon = std::uint32_t;
inline constexpr Codon kMaxCodon = 255;
inline constexpr int kDefaultMaxWraps = 2;

/// Node of a derivation (or parse) tree. Terminal leaves carry their text;
/// inner nodes record which production of which rule was expanded.
struct DerivationNode {
    bool terminal = false;
    std::string text;
    std::size_t rule = 0;
    std::size_t production = 0;
    std::vector<DerivationNode> children;

    friend bool operator==(const DerivationNode&, const DerivationNode&) = default;
};

struct MappingStats {
    /// Codons read, counting re-reads after wrapping.
    std::size_t codons_used = 0;
    /// Expansions of rules with more than one production.
    std::size_t choice_points = 0;
};

/// Standard GE mapping: leftmost derivation from the start symbol; each rule
/// with k > 1 productions reads the next codon c and expands production
/// c mod k; rules with a single production read nothing. The genome is
/// re-read from the start at most `max_wraps` times. Returns nullopt
/// (Invalid) when the derivation is still incomplete after that, or grows
/// beyond `max_nodes`.
std::optional<DerivationNode> map_genome(std::span<const Codon> genome, const Grammar& grammar,
                                         int max_wraps = kDefaultMaxWraps, MappingStats* stats = nullptr,
                                         std::size_t max_nodes = 200000);

/// Terminals of the tree in order, joined by single spaces.
std::string leaf_string(const DerivationNode& node);

/// Number of expansions in the tree of the named rule that had a choice
/// (rule with more than one production).
std::size_t count_choices(const DerivationNode& node, const Grammar& grammar, std::string_view rule);

} // namespace cyberevo::ge
