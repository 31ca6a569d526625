#pragma once

#include "cyberevo/ge/derivation.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace cyberevo::ge {

/// Renders a derivation tree of a controller grammar as indented code:
/// statement rules start their own lines and nested statements are indented
/// one level deeper than the `if` owning them.
std::string render_program(const DerivationNode& tree, const Grammar& grammar);

/// Parses code against the grammar's concrete syntax. Whitespace and
/// indentation are not significant; tokens must match the terminals exactly
/// and the whole text must be consumed. Returns nullopt when the text is not
/// in the grammar's language.
std::optional<DerivationNode> parse_program(std::string_view code, const Grammar& grammar);

/// Extracts the body of the first ``` fenced block, or returns the text
/// unchanged when it has none.
std::string strip_code_fence(std::string_view text);

/// Lexical tokens as the program parser sees them.
std::vector<std::string> tokenize_code(std::string_view text);

} // namespace cyberevo::ge
