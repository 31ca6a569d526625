#include "cyberevo/ge/ast.hpp"

#include "cyberevo/kv_config.hpp"

#include <array>

namespace cyberevo::ge {

namespace {

constexpr std::array<std::string_view, 3> kHeuristicNames{"random_target", "first_target", "last_target"};

std::string collapse(std::string_view s) {
    std::string out;
    for (char c : trim(s)) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            if (!out.empty() && out.back() != ' ') out += ' ';
        } else {
            out += c;
        }
    }
    return out;
}

class Builder {
  public:
    explicit Builder(Side side) : side_(side) {}

    void process(const DerivationNode& node, std::vector<Statement>& out) const {
        const auto& ch = node.children;
        if (!ch.empty() && ch.front().terminal && collapse(ch.front().text) == "if") {
            IfStatement stmt;
            bool have_condition = false;
            for (std::size_t i = 1; i < ch.size(); ++i) {
                if (ch[i].terminal) continue;
                if (!have_condition) {
                    stmt.condition = condition(ch[i]);
                    have_condition = true;
                } else {
                    process(ch[i], stmt.body);
                }
            }
            if (!have_condition) fail("if without a condition");
            out.push_back({std::move(stmt)});
            return;
        }
        for (std::size_t i = 0; i < ch.size(); ++i) {
            if (!ch[i].terminal) {
                process(ch[i], out);
                continue;
            }
            const std::string text = collapse(ch[i].text);
            const auto eq = text.find('=');
            if (eq == std::string::npos || text.compare(eq, 2, "==") == 0) continue;
            const std::string lhs(trim(std::string_view(text).substr(0, eq)));
            if (lhs != "action" && lhs != "target_heuristic") continue;
            std::string value(trim(std::string_view(text).substr(eq + 1)));
            if (value.empty()) {
                if (i + 1 >= ch.size()) fail("assignment without a value");
                value = collapse(leaf_string(ch[++i]));
            }
            out.push_back(lhs == "action" ? assign_action(value) : assign_target(value));
        }
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const { throw Error("controller program: " + msg); }

    Statement assign_action(const std::string& name) const {
        const auto a = sim::find_action(side_, name);
        if (!a) fail("'" + name + "' is not a " + std::string(to_string(side_)) + " action");
        return {ActionAssign{*a}};
    }

    Statement assign_target(const std::string& name) const {
        const auto h = parse_target_heuristic(name);
        if (!h) fail("unknown target heuristic '" + name + "'");
        return {TargetAssign{*h}};
    }

    Condition condition(const DerivationNode& node) const {
        std::vector<const DerivationNode*> ops;
        Condition c;
        for (const auto& child : node.children) {
            if (!child.terminal) {
                ops.push_back(&child);
                continue;
            }
            const std::string t = collapse(child.text);
            if (t == "and") c.join = Condition::Join::And;
            else if (t == "or") c.join = Condition::Join::Or;
            else fail("unexpected '" + t + "' in condition");
        }
        const std::size_t expected = c.join == Condition::Join::Single ? 1 : 2;
        if (ops.size() != expected) fail("malformed condition");
        c.lhs = op(*ops[0]);
        if (expected == 2) c.rhs = op(*ops[1]);
        return c;
    }

    Operator op(const DerivationNode& node) const {
        Operator o;
        const auto& ch = node.children;
        if (ch.size() == 2 && collapse(leaf_string(ch[1])).find("observation['success']") != std::string::npos) {
            o.kind = Operator::Kind::SuccessTest;
            const std::string name = collapse(leaf_string(ch[0]));
            const auto s = sim::parse_success(name);
            if (!s) fail("unknown success value '" + name + "'");
            o.success = *s;
            return o;
        }
        if (ch.size() != 3) fail("malformed operator '" + leaf_string(node) + "'");
        const std::string call = collapse(leaf_string(ch[0]));
        const auto fn = sim::find_observation_fn(trim(std::string_view(call).substr(0, call.find('('))));
        if (!fn) fail("unknown observation function '" + call + "'");
        o.fn = *fn;
        const std::string cmp = collapse(leaf_string(ch[1]));
        if (cmp == ">") o.cmp = Comparison::Greater;
        else if (cmp == "<") o.cmp = Comparison::Less;
        else if (cmp == "==") o.cmp = Comparison::Equal;
        else fail("unknown comparison '" + cmp + "'");
        o.constant = static_cast<int>(parse_int(collapse(leaf_string(ch[2])), "condition constant"));
        return o;
    }

    Side side_;
};

std::size_t count(const std::vector<Statement>& statements) {
    std::size_t n = 0;
    for (const auto& s : statements) {
        ++n;
        if (const auto* i = std::get_if<IfStatement>(&s.node)) n += 1 + count(i->body);
    }
    return n;
}

} // namespace

std::string_view target_heuristic_name(TargetHeuristic h) noexcept { return kHeuristicNames[static_cast<std::size_t>(h)]; }

std::optional<TargetHeuristic> parse_target_heuristic(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kHeuristicNames.size(); ++i)
        if (kHeuristicNames[i] == name) return static_cast<TargetHeuristic>(i);
    return std::nullopt;
}

std::size_t RuleAst::node_count() const { return count(statements); }

RuleAst build_ast(const DerivationNode& tree, Side side) {
    RuleAst ast;
    ast.side = side;
    Builder(side).process(tree, ast.statements);
    return ast;
}

} // namespace cyberevo::ge
