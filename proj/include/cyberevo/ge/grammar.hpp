#pragma once

#include "cyberevo/common.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cyberevo::ge {

struct Symbol {
    bool terminal = true;
    /// Terminal text, or the nonterminal's name.
    std::string text;
    /// Rule index for nonterminals.
    std::size_t rule = 0;

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

struct Production {
    std::vector<Symbol> symbols;

    friend bool operator==(const Production&, const Production&) = default;
};

struct Rule {
    std::string name;
    std::vector<Production> productions;

    friend bool operator==(const Rule&, const Rule&) = default;
};

/// Context-free grammar in the `name: "terminal" nonterminal | ...` notation.
/// The first rule is the start symbol. Production order matters: GE codons
/// index into it.
class Grammar {
  public:
    /// Parses the notation. Rules begin at column 0 with `name:`; indented
    /// lines continue the previous rule; `|` separates alternatives; lines
    /// starting with '#' are comments. A string literal left open runs to the
    /// end of the line, and `''` also closes one.
    static Grammar parse(std::string_view text);

    /// Builds a grammar from rules whose nonterminal symbols are named but not
    /// yet resolved. Throws on undefined names, duplicates or empty productions.
    static Grammar from_rules(std::vector<Rule> rules);

    const std::vector<Rule>& rules() const noexcept { return rules_; }
    const Rule& rule(std::size_t i) const { return rules_.at(i); }
    const Rule& start() const { return rules_.at(0); }
    std::optional<std::size_t> find_rule(std::string_view name) const noexcept;
    const Rule& rule(std::string_view name) const;

    std::size_t production_count() const noexcept;
    /// Terminals of every production of `rule` that consists of one terminal.
    std::vector<std::string> alternatives(std::string_view rule) const;

    /// Canonical text in the same notation; parse(text()) == *this.
    std::string text() const;

    friend bool operator==(const Grammar&, const Grammar&) = default;

  private:
    std::vector<Rule> rules_;
};

} // namespace cyberevo::ge
