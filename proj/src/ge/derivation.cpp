#include "cyberevo/ge/derivation.hpp"

namespace cyberevo::ge {

std::optional<DerivationNode> map_genome(std::span<const Codon> genome, const Grammar& grammar, int max_wraps,
                                         MappingStats* stats, std::size_t max_nodes) {
    if (genome.empty()) throw Error("map_genome: empty genome");
    if (max_wraps < 0) throw Error("map_genome: negative wrap count");
    const std::size_t budget = genome.size() * (static_cast<std::size_t>(max_wraps) + 1);
    MappingStats local;
    MappingStats& st = stats ? *stats : local;
    st = {};

    DerivationNode root;
    root.rule = 0;
    // Nodes still to expand, leftmost on top. Pointers stay valid because a
    // node's children vector is sized once, before any child is pushed.
    std::vector<DerivationNode*> pending{&root};
    std::size_t nodes = 1;
    while (!pending.empty()) {
        DerivationNode* node = pending.back();
        pending.pop_back();
        const Rule& rule = grammar.rule(node->rule);
        std::size_t choice = 0;
        if (rule.productions.size() > 1) {
            if (st.codons_used >= budget) return std::nullopt;
            choice = genome[st.codons_used % genome.size()] % rule.productions.size();
            ++st.codons_used;
            ++st.choice_points;
        }
        node->production = choice;
        const auto& symbols = rule.productions[choice].symbols;
        nodes += symbols.size();
        if (nodes > max_nodes) return std::nullopt;
        node->children.resize(symbols.size());
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            auto& child = node->children[i];
            child.terminal = symbols[i].terminal;
            if (child.terminal) child.text = symbols[i].text;
            else child.rule = symbols[i].rule;
        }
        for (std::size_t i = symbols.size(); i-- > 0;)
            if (!symbols[i].terminal) pending.push_back(&node->children[i]);
    }
    return root;
}

namespace {

void collect_leaves(const DerivationNode& node, std::string& out) {
    if (node.terminal) {
        if (!out.empty()) out += ' ';
        out += node.text;
        return;
    }
    for (const auto& c : node.children) collect_leaves(c, out);
}

} // namespace

std::string leaf_string(const DerivationNode& node) {
    std::string out;
    collect_leaves(node, out);
    return out;
}

std::size_t count_choices(const DerivationNode& node, const Grammar& grammar, std::string_view rule) {
    const auto idx = grammar.find_rule(rule);
    if (!idx || grammar.rule(*idx).productions.size() < 2) return 0;
    std::size_t n = 0;
    std::vector<const DerivationNode*> stack{&node};
    while (!stack.empty()) {
        const DerivationNode* cur = stack.back();
        stack.pop_back();
        if (cur->terminal) continue;
        if (cur->rule == *idx) ++n;
        for (const auto& c : cur->children) stack.push_back(&c);
    }
    return n;
}

} // namespace cyberevo::ge
