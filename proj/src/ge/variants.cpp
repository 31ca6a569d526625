#include "cyberevo/ge/variants.hpp"

#include "cyberevo/embedded_data.hpp"
#include "cyberevo/sim/actions.hpp"

#include <algorithm>
#include <array>

namespace cyberevo::ge {

namespace {

constexpr std::array<std::string_view, kGrammarVariantCount> kNames{"baseline", "TR", "TN", "TO", "TC", "OE"};
constexpr std::array<std::string_view, 3> kExtraObservations{"connections(observation)", "files_user(observation)",
                                                             "files_root(observation)"};

Symbol terminal(std::string text) { return {true, std::move(text), 0}; }
Symbol nonterminal(std::string name) { return {false, std::move(name), 0}; }

/// Position of the `"target_heuristic =" target_heuristic` pair in the start production.
std::size_t target_pair(const Production& start) {
    for (std::size_t i = 0; i + 1 < start.symbols.size(); ++i)
        if (start.symbols[i].terminal && start.symbols[i].text == "target_heuristic =" &&
            !start.symbols[i + 1].terminal && start.symbols[i + 1].text == "target_heuristic")
            return i;
    throw Error("grammar variant: base grammar has no unconditional target selection");
}

void check_side(const Grammar& g, Side side) {
    const auto names = g.alternatives("actions");
    const auto catalog = sim::action_catalog(side);
    bool same = names.size() == catalog.size();
    for (std::size_t i = 0; same && i < names.size(); ++i) same = names[i] == catalog[i].name;
    if (!same) throw Error("grammar variant: action terminals do not match the " + std::string(to_string(side)) + " side");
}

std::vector<Rule> drop_unreferenced(std::vector<Rule> rules) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t r = 1; r < rules.size(); ++r) {
            bool used = false;
            for (const auto& other : rules)
                for (const auto& p : other.productions)
                    for (const auto& s : p.symbols) used = used || (!s.terminal && s.text == rules[r].name);
            if (!used) {
                rules.erase(rules.begin() + static_cast<std::ptrdiff_t>(r));
                changed = true;
                break;
            }
        }
    }
    return rules;
}

} // namespace

std::string_view variant_name(GrammarVariant v) noexcept { return kNames[static_cast<std::size_t>(v)]; }

std::optional<GrammarVariant> parse_variant(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (kNames[i] == name) return static_cast<GrammarVariant>(i);
    return std::nullopt;
}

const Grammar& baseline_grammar(Side side) {
    static const Grammar red = Grammar::parse(embedded_file("grammars/red_baseline.bnf"));
    static const Grammar blue = Grammar::parse(embedded_file("grammars/blue_baseline.bnf"));
    return side == Side::Red ? red : blue;
}

Grammar build_variant(const Grammar& base, GrammarVariant v, Side side) {
    check_side(base, side);
    if (base.start().productions.size() != 1) throw Error("grammar variant: start rule must have one production");
    std::vector<Rule> rules = base.rules();
    Production& start = rules[0].productions[0];
    const std::size_t at = target_pair(start);
    const auto replace_pair = [&](std::vector<Symbol> with) {
        start.symbols.erase(start.symbols.begin() + static_cast<std::ptrdiff_t>(at),
                            start.symbols.begin() + static_cast<std::ptrdiff_t>(at) + 2);
        start.symbols.insert(start.symbols.begin() + static_cast<std::ptrdiff_t>(at), with.begin(), with.end());
    };

    switch (v) {
    case GrammarVariant::Baseline:
        break;
    case GrammarVariant::TR:
    case GrammarVariant::TN:
    case GrammarVariant::TO: {
        const std::string_view fixed = v == GrammarVariant::TR ? "random_target"
                                       : v == GrammarVariant::TN ? "last_target"
                                                                 : "first_target";
        replace_pair({terminal("target_heuristic = " + std::string(fixed))});
        rules = drop_unreferenced(std::move(rules));
        break;
    }
    case GrammarVariant::TC: {
        if (base.find_rule("th_statements") || base.find_rule("th_statement"))
            throw Error("grammar variant: base grammar already has conditional targets");
        replace_pair({nonterminal("th_statements")});
        Rule seq{"th_statements", {{{nonterminal("th_statement")}}, {{nonterminal("th_statement"), nonterminal("th_statements")}}}};
        Rule stmt{"th_statement",
                  {{{terminal("if"), nonterminal("conditions"), terminal(":"), nonterminal("th_statement")}},
                   {{terminal("target_heuristic ="), nonterminal("target_heuristic")}}}};
        const auto pos = std::find_if(rules.begin(), rules.end(), [](const Rule& r) { return r.name == "statement"; });
        const auto insert_at = pos == rules.end() ? rules.end() : pos + 1;
        rules.insert(insert_at, {std::move(seq), std::move(stmt)});
        break;
    }
    case GrammarVariant::OE: {
        auto obs = std::find_if(rules.begin(), rules.end(), [](const Rule& r) { return r.name == "observations"; });
        if (obs == rules.end()) throw Error("grammar variant: base grammar has no observations rule");
        for (std::string_view extra : kExtraObservations) {
            for (const auto& p : obs->productions)
                if (p.symbols.size() == 1 && p.symbols[0].text == extra)
                    throw Error("grammar variant: base grammar already offers " + std::string(extra));
            obs->productions.push_back({{terminal(std::string(extra))}});
        }
        break;
    }
    }
    return Grammar::from_rules(std::move(rules));
}

const Grammar& controller_grammar(Side side, GrammarVariant v) {
    static const auto table = [] {
        std::array<std::array<Grammar, kGrammarVariantCount>, 2> t;
        for (Side s : {Side::Red, Side::Blue})
            for (std::size_t i = 0; i < kGrammarVariantCount; ++i)
                t[static_cast<std::size_t>(s)][i] = build_variant(baseline_grammar(s), static_cast<GrammarVariant>(i), s);
        return t;
    }();
    return table[static_cast<std::size_t>(side)][static_cast<std::size_t>(v)];
}

} // namespace cyberevo::ge
