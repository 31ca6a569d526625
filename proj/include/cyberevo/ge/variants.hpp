#pragma once

#include "cyberevo/ge/grammar.hpp"

#include <optional>
#include <string_view>

namespace cyberevo::ge {

enum class GrammarVariant : std::uint8_t {
    Baseline,
    /// Target fixed to random_target.
    TR,
    /// Target fixed to last_target (newest host).
    TN,
    /// Target fixed to first_target (oldest host).
    TO,
    /// Conditional target selection section.
    TC,
    /// Three more observation functions.
    OE,
};
inline constexpr std::size_t kGrammarVariantCount = 6;

std::string_view variant_name(GrammarVariant v) noexcept;
std::optional<GrammarVariant> parse_variant(std::string_view name) noexcept;

/// Baseline controller grammar shipped for `side`.
const Grammar& baseline_grammar(Side side);

/// Applies a variant to a baseline grammar. Throws if `base` does not have
/// the baseline shape (unconditional target choice, baseline observations)
/// or its action terminals do not match `side`.
Grammar build_variant(const Grammar& base, GrammarVariant v, Side side);

/// build_variant(baseline_grammar(side), v, side), cached.
const Grammar& controller_grammar(Side side, GrammarVariant v);

} // namespace cyberevo::ge
