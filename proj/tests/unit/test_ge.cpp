#include "doctest.h"

#include "cyberevo/ge/ast.hpp"
#include "cyberevo/ge/program_text.hpp"
#include "cyberevo/ge/variants.hpp"
#include "cyberevo/kv_config.hpp"
#include "cyberevo/rng.hpp"

#include <deque>

using namespace cyberevo;
using namespace cyberevo::ge;

namespace {

std::string test_data(const std::string& name) { return read_file(std::string(CYBEREVO_TEST_DATA_DIR) + "/" + name); }

/// Reference mapper: rewrites the leftmost nonterminal of a flat sentential
/// form, one codon per choice, with the genome read cyclically.
std::optional<std::string> reference_map(const std::vector<Codon>& genome, const Grammar& g, int wraps) {
    std::deque<Symbol> form{Symbol{false, g.start().name, 0}};
    std::vector<std::string> done;
    std::size_t used = 0;
    const std::size_t budget = genome.size() * static_cast<std::size_t>(wraps + 1);
    int steps = 0;
    while (!form.empty()) {
        if (++steps > 100000) return std::nullopt;
        Symbol s = form.front();
        form.pop_front();
        if (s.terminal) {
            done.push_back(s.text);
            continue;
        }
        const Rule& r = g.rule(s.text);
        std::size_t pick = 0;
        if (r.productions.size() > 1) {
            if (used == budget) return std::nullopt;
            pick = genome[used % genome.size()] % r.productions.size();
            ++used;
        }
        const auto& syms = r.productions[pick].symbols;
        form.insert(form.begin(), syms.begin(), syms.end());
    }
    std::string out;
    for (const auto& t : done) out += (out.empty() ? "" : " ") + t;
    return out;
}

std::vector<Codon> random_genome(Rng& rng, std::size_t n) {
    std::vector<Codon> g(n);
    for (auto& c : g) c = static_cast<Codon>(rng.uniform_int(0, kMaxCodon));
    return g;
}

const Grammar& toy() {
    static const Grammar g = Grammar::parse(R"g(e: "x" | "(" e o e ")" | v
o: "+" | "*"
v: "a"
)g");
    return g;
}

} // namespace

TEST_CASE("toy grammar parsing") {
    const Grammar g = Grammar::parse("s: \"a\" | \"b\" s\n");
    REQUIRE(g.rules().size() == 1);
    CHECK(g.start().name == "s");
    CHECK(g.start().productions.size() == 2);
    CHECK(g.start().productions[1].symbols.size() == 2);
    CHECK_FALSE(g.start().productions[1].symbols[1].terminal);
}

TEST_CASE("grammar validation errors") {
    CHECK_THROWS_AS(Grammar::parse("s: \"a\" | t\n"), Error);
    CHECK_THROWS_AS(Grammar::parse("s: \"a\" | | \"b\"\n"), Error);
    CHECK_THROWS_AS(Grammar::parse("s: \"a\"\ns: \"b\"\n"), Error);
    CHECK_THROWS_AS(Grammar::parse("  \"a\"\n"), Error);
    CHECK_THROWS_AS(Grammar::parse(""), Error);
}

TEST_CASE("grammar text round trip") {
    for (Side side : {Side::Red, Side::Blue})
        for (std::size_t v = 0; v < kGrammarVariantCount; ++v) {
            const Grammar& g = controller_grammar(side, static_cast<GrammarVariant>(v));
            CHECK(Grammar::parse(g.text()) == g);
        }
}

TEST_CASE("hand-written grammar listings parse verbatim") {
    const Grammar blue = Grammar::parse(test_data("listing_blue.bnf"));
    const std::vector<std::string> blue_actions{"AllowTrafficZone", "BlockTrafficZone", "Monitor", "Analyse",
                                                "Restore",          "Remove",           "DeployDecoy", "Sleep"};
    CHECK(blue.alternatives("actions") == blue_actions);
    CHECK(blue.start().name == "sections");
    CHECK(blue.alternatives("observations").size() == 3);
    const Grammar red = Grammar::parse(test_data("listing_red.bnf"));
    CHECK(red.alternatives("actions").size() == 10);
    CHECK(red.alternatives("observations").size() == 5);
    // The listing's malformed quotes still yield the intended terminals.
    const auto& th = red.rule("th_statement").productions[0].symbols;
    REQUIRE(th.size() == 4);
    CHECK(th[2].text == ":");
    const auto& st = red.rule("statement").productions[0].symbols;
    CHECK(st[2].text == ":");
    CHECK(red.start().productions[0].symbols.back().text == "return action, target_heuristic");
}

TEST_CASE("mapping picks productions by codon modulo") {
    const Grammar g = Grammar::parse("s: \"a\" | \"b\"\n");
    const std::vector<Codon> four{4};
    CHECK(leaf_string(*map_genome(four, g)) == "a");
    const std::vector<Codon> five{5};
    CHECK(leaf_string(*map_genome(five, g)) == "b");

    const Grammar rec = Grammar::parse("s: \"a\" | \"a\" s\n");
    const std::vector<Codon> genome{1, 1, 0};
    CHECK(leaf_string(*map_genome(genome, rec)) == "a a a");
    const std::vector<Codon> always{1};
    CHECK_FALSE(map_genome(always, rec, 2).has_value());
    MappingStats stats;
    CHECK(map_genome(std::vector<Codon>{1, 1}, rec, 2, &stats) == std::nullopt);
    CHECK(stats.codons_used == 6);
}

TEST_CASE("mapping matches the reference rewriter exhaustively") {
    std::size_t checked = 0;
    for (int wraps = 0; wraps <= 2; ++wraps)
        for (std::size_t len = 1; len <= 4; ++len) {
            std::vector<Codon> genome(len, 0);
            while (true) {
                const auto got = map_genome(genome, toy(), wraps);
                const auto want = reference_map(genome, toy(), wraps);
                CHECK(got.has_value() == want.has_value());
                if (got && want) CHECK(leaf_string(*got) == *want);
                ++checked;
                std::size_t i = 0;
                while (i < len && ++genome[i] == 8) genome[i++] = 0;
                if (i == len) break;
            }
        }
    CHECK(checked == 3 * (8 + 64 + 512 + 4096));
}

TEST_CASE("codons after the derivation completes do not matter") {
    Rng rng(3);
    const Grammar& g = controller_grammar(Side::Red, GrammarVariant::Baseline);
    int compared = 0;
    for (int t = 0; t < 300; ++t) {
        auto genome = random_genome(rng, 200);
        MappingStats stats;
        const auto tree = map_genome(genome, g, 2, &stats);
        if (!tree || stats.codons_used >= genome.size()) continue;
        for (std::size_t i = stats.codons_used; i < genome.size(); ++i) genome[i] = static_cast<Codon>(rng.uniform_int(0, 255));
        CHECK(map_genome(genome, g, 2) == tree);
        ++compared;
    }
    CHECK(compared > 50);
}

TEST_CASE("exhausted recursion is invalid") {
    const Grammar& tc = controller_grammar(Side::Blue, GrammarVariant::TC);
    const std::vector<Codon> ones(1000, 1);
    MappingStats stats;
    CHECK_FALSE(map_genome(ones, tc, 2, &stats).has_value());
    CHECK(stats.codons_used == 3000);
}

TEST_CASE("grammar variants") {
    for (Side side : {Side::Red, Side::Blue}) {
        const Grammar& base = controller_grammar(side, GrammarVariant::Baseline);
        const Grammar& oe = controller_grammar(side, GrammarVariant::OE);
        CHECK(base.alternatives("observations") ==
              std::vector<std::string>{"n_servers(observation)", "root_access_levels(observation, name)"});
        CHECK(oe.alternatives("observations").size() == base.alternatives("observations").size() + 3);
        CHECK(oe.production_count() > base.production_count());
        CHECK(base.rule("target_heuristic").productions.size() == 3);
        CHECK(controller_grammar(side, GrammarVariant::TC).find_rule("th_statements").has_value());
        for (GrammarVariant v : {GrammarVariant::TR, GrammarVariant::TN, GrammarVariant::TO})
            CHECK_FALSE(controller_grammar(side, v).find_rule("target_heuristic").has_value());
        CHECK_THROWS_AS(build_variant(base, GrammarVariant::Baseline, opposite(side)), Error);
        CHECK_THROWS_AS(build_variant(oe, GrammarVariant::OE, side), Error);
        CHECK_THROWS_AS(build_variant(controller_grammar(side, GrammarVariant::TC), GrammarVariant::TN, side), Error);
    }
    CHECK(parse_variant("TN") == GrammarVariant::TN);
    CHECK_FALSE(parse_variant("XX").has_value());
}

TEST_CASE("fixed-target variants hardcode the heuristic") {
    Rng rng(9);
    const std::pair<GrammarVariant, TargetHeuristic> cases[] = {
        {GrammarVariant::TR, TargetHeuristic::Random},
        {GrammarVariant::TN, TargetHeuristic::Last},
        {GrammarVariant::TO, TargetHeuristic::First}};
    for (const auto& [variant, heuristic] : cases) {
        const Grammar& g = controller_grammar(Side::Red, variant);
        int decoded = 0;
        for (int t = 0; t < 200; ++t) {
            const auto tree = map_genome(random_genome(rng, 100), g);
            if (!tree) continue;
            ++decoded;
            CHECK(count_choices(*tree, g, "target_heuristic") == 0);
            const RuleAst ast = build_ast(*tree, Side::Red);
            REQUIRE(!ast.statements.empty());
            const auto* target = std::get_if<TargetAssign>(&ast.statements.back().node);
            REQUIRE(target);
            CHECK(target->heuristic == heuristic);
        }
        CHECK(decoded > 0);
    }
    const Grammar& base = controller_grammar(Side::Red, GrammarVariant::Baseline);
    const auto tree = map_genome(random_genome(rng, 100), base);
    if (tree) CHECK(count_choices(*tree, base, "target_heuristic") == 1);
}

TEST_CASE("ast construction from a known program") {
    const Grammar& g = controller_grammar(Side::Blue, GrammarVariant::OE);
    const auto tree = parse_program(R"(def select_action_and_target(observation, name):
    #Select action
    if connections(observation) > 1 and TRUE == observation['success']:
        action = Restore
    action = Monitor
    #Select target
    target_heuristic = last_target
    return action, target_heuristic
)",
                                    g);
    REQUIRE(tree.has_value());
    const RuleAst ast = build_ast(*tree, Side::Blue);
    REQUIRE(ast.statements.size() == 3);
    const auto& stmt = std::get<IfStatement>(ast.statements[0].node);
    CHECK(stmt.condition.join == Condition::Join::And);
    CHECK(stmt.condition.lhs.fn == sim::ObservationFn::Connections);
    CHECK(stmt.condition.lhs.cmp == Comparison::Greater);
    CHECK(stmt.condition.lhs.constant == 1);
    CHECK(stmt.condition.rhs.kind == Operator::Kind::SuccessTest);
    CHECK(stmt.condition.rhs.success == sim::Success::True);
    REQUIRE(stmt.body.size() == 1);
    CHECK(std::get<ActionAssign>(stmt.body[0].node).action == sim::id(sim::BlueAction::Restore));
    CHECK(std::get<ActionAssign>(ast.statements[1].node).action == sim::id(sim::BlueAction::Monitor));
    CHECK(std::get<TargetAssign>(ast.statements[2].node).heuristic == TargetHeuristic::Last);
    CHECK(ast.node_count() == 5);
}

TEST_CASE("program text round trips for decoded genomes") {
    Rng rng(77);
    for (Side side : {Side::Red, Side::Blue})
        for (std::size_t v = 0; v < kGrammarVariantCount; ++v) {
            const Grammar& g = controller_grammar(side, static_cast<GrammarVariant>(v));
            for (int t = 0; t < 40; ++t) {
                const auto tree = map_genome(random_genome(rng, 300), g);
                if (!tree) continue;
                const std::string code = render_program(*tree, g);
                const auto parsed = parse_program(code, g);
                REQUIRE_MESSAGE(parsed.has_value(), code);
                CHECK(*parsed == *tree);
                CHECK(render_program(*parsed, g) == code);
                CHECK(build_ast(*parsed, side) == build_ast(*tree, side));
            }
        }
}

TEST_CASE("program parsing is whitespace tolerant but strict about tokens") {
    const Grammar& g = controller_grammar(Side::Red, GrammarVariant::TR);
    const std::string compact =
        "def select_action_and_target(observation,name):\n#Select action\nif n_servers(observation)>0:\n"
        "  if FALSE==observation['success']: action=Impact\naction =Sleep\n#Select target\n"
        "target_heuristic = random_target\nreturn action,target_heuristic";
    const auto tree = parse_program(compact, g);
    REQUIRE(tree.has_value());
    const RuleAst ast = build_ast(*tree, Side::Red);
    CHECK(ast.node_count() == 7);

    CHECK_FALSE(parse_program("action = Sleep", g).has_value());
    std::string bad = compact;
    bad.replace(bad.find("Impact"), 6, "Nuke");
    CHECK_FALSE(parse_program(bad, g).has_value());
    std::string wrong_side = compact;
    wrong_side.replace(wrong_side.find("Impact"), 6, "Restore");
    CHECK_FALSE(parse_program(wrong_side, g).has_value());
    std::string glued = compact;
    glued.replace(glued.find("if n_servers"), 2, "ifx");
    CHECK_FALSE(parse_program(glued, g).has_value());

    const std::string fenced = "Here you go:\n```python\n" + compact + "\n```\nThanks";
    CHECK(parse_program(strip_code_fence(fenced), g).has_value());
    CHECK(strip_code_fence("plain") == "plain");
}

TEST_CASE("rendered baseline program layout") {
    const Grammar& g = controller_grammar(Side::Red, GrammarVariant::Baseline);
    const auto tree = parse_program(
        "def select_action_and_target(observation, name): #Select action if n_servers(observation) > 1 : "
        "action = Impact action = Sleep #Select target target_heuristic = first_target return action, target_heuristic",
        g);
    REQUIRE(tree.has_value());
    CHECK(render_program(*tree, g) == "def select_action_and_target(observation, name):\n"
                                      "    #Select action\n"
                                      "    if n_servers(observation) > 1:\n"
                                      "        action = Impact\n"
                                      "    action = Sleep\n"
                                      "    #Select target\n"
                                      "    target_heuristic = first_target\n"
                                      "    return action, target_heuristic\n");
}
