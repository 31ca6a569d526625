#include "cyberevo/ge/program_text.hpp"

#include "cyberevo/kv_config.hpp"

#include <algorithm>
#include <cctype>

namespace cyberevo::ge {

namespace {

constexpr int kIndent = 4;

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool is_block_rule(std::string_view name) {
    return name.ends_with("statement") || name.ends_with("statements");
}

bool starts_with_if(const DerivationNode& node) {
    return !node.children.empty() && node.children.front().terminal && trim(node.children.front().text) == "if";
}

class Renderer {
  public:
    explicit Renderer(const Grammar& g) : grammar_(g) {}

    std::string run(const DerivationNode& root) {
        bool first = true;
        for (const auto& child : root.children) {
            if (child.terminal) {
                start_line(first ? 0 : kIndent);
                first = false;
                append(child.text);
            } else if (is_block(child)) {
                block(child, kIndent);
            } else {
                inline_node(child);
            }
        }
        flush();
        return out_;
    }

  private:
    bool is_block(const DerivationNode& n) const { return !n.terminal && is_block_rule(grammar_.rule(n.rule).name); }

    void block(const DerivationNode& node, int indent) {
        if (starts_with_if(node)) {
            start_line(indent);
            for (const auto& child : node.children) {
                if (child.terminal) append(child.text);
                else if (is_block(child)) block(child, indent + kIndent);
                else inline_node(child);
            }
            return;
        }
        for (const auto& child : node.children) {
            if (child.terminal) {
                start_line(indent);
                append(child.text);
            } else if (is_block(child)) {
                block(child, indent);
            } else {
                inline_node(child);
            }
        }
    }

    void inline_node(const DerivationNode& node) {
        if (node.terminal) {
            append(node.text);
            return;
        }
        for (const auto& child : node.children) inline_node(child);
    }

    void start_line(int indent) {
        flush();
        line_ = std::string(static_cast<std::size_t>(indent), ' ');
        open_ = true;
        empty_ = true;
    }

    void append(std::string_view token) {
        token = trim(token);
        if (!open_) start_line(0);
        if (!empty_ && token != ":") line_ += ' ';
        line_ += token;
        empty_ = false;
    }

    void flush() {
        if (open_) out_ += line_ + '\n';
        open_ = false;
        line_.clear();
    }

    const Grammar& grammar_;
    std::string out_;
    std::string line_;
    bool open_ = false;
    bool empty_ = true;
};

using Tokens = std::vector<std::string>;

class Parser {
  public:
    Parser(const Grammar& g, Tokens input) : grammar_(g), input_(std::move(input)) {
        const std::size_t n = input_.size() + 1;
        memo_.assign(g.rules().size(), std::vector<std::optional<std::vector<std::size_t>>>(n));
        active_.assign(g.rules().size(), std::vector<bool>(n, false));
        terminals_.resize(g.rules().size());
        for (std::size_t r = 0; r < g.rules().size(); ++r)
            for (const auto& p : g.rule(r).productions) {
                std::vector<Tokens> row;
                for (const auto& s : p.symbols) row.push_back(s.terminal ? tokenize_code(s.text) : Tokens{});
                terminals_[r].push_back(std::move(row));
            }
    }

    std::optional<DerivationNode> parse() {
        const auto& e = ends(0, 0);
        if (std::find(e.begin(), e.end(), input_.size()) == e.end()) return std::nullopt;
        return build(0, 0, input_.size());
    }

  private:
    std::vector<std::size_t> match_symbol(std::size_t rule, std::size_t prod, std::size_t k, std::size_t pos) {
        const Symbol& sym = grammar_.rule(rule).productions[prod].symbols[k];
        if (!sym.terminal) return ends(sym.rule, pos);
        const Tokens& t = terminals_[rule][prod][k];
        if (pos + t.size() > input_.size()) return {};
        for (std::size_t i = 0; i < t.size(); ++i)
            if (input_[pos + i] != t[i]) return {};
        return {pos + t.size()};
    }

    std::vector<std::size_t> seq_ends(std::size_t rule, std::size_t prod, std::size_t k, std::size_t pos) {
        std::vector<std::size_t> current{pos};
        const std::size_t count = grammar_.rule(rule).productions[prod].symbols.size();
        for (; k < count && !current.empty(); ++k) {
            std::vector<std::size_t> next;
            for (std::size_t p : current) {
                const auto e = match_symbol(rule, prod, k, p);
                next.insert(next.end(), e.begin(), e.end());
            }
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            current = std::move(next);
        }
        return current;
    }

    const std::vector<std::size_t>& ends(std::size_t rule, std::size_t pos) {
        static const std::vector<std::size_t> none;
        if (auto& m = memo_[rule][pos]) return *m;
        // Left recursion: treat a re-entrant call as matching nothing.
        if (active_[rule][pos]) return none;
        active_[rule][pos] = true;
        std::vector<std::size_t> all;
        for (std::size_t p = 0; p < grammar_.rule(rule).productions.size(); ++p) {
            const auto e = seq_ends(rule, p, 0, pos);
            all.insert(all.end(), e.begin(), e.end());
        }
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        active_[rule][pos] = false;
        memo_[rule][pos] = std::move(all);
        return *memo_[rule][pos];
    }

    DerivationNode build(std::size_t rule, std::size_t pos, std::size_t end) {
        DerivationNode node;
        node.rule = rule;
        const auto& productions = grammar_.rule(rule).productions;
        for (std::size_t p = 0; p < productions.size(); ++p) {
            std::vector<std::size_t> cuts;
            if (!split(rule, p, 0, pos, end, cuts)) continue;
            node.production = p;
            std::size_t at = pos;
            for (std::size_t k = 0; k < productions[p].symbols.size(); ++k) {
                const Symbol& s = productions[p].symbols[k];
                if (s.terminal) {
                    DerivationNode leaf;
                    leaf.terminal = true;
                    leaf.text = s.text;
                    node.children.push_back(std::move(leaf));
                } else {
                    node.children.push_back(build(s.rule, at, cuts[k]));
                }
                at = cuts[k];
            }
            return node;
        }
        throw Error("program parser: inconsistent parse table");
    }

    /// Finds end positions for each symbol of production `prod` so that the
    /// sequence spans [pos, end). Earliest cut first.
    bool split(std::size_t rule, std::size_t prod, std::size_t k, std::size_t pos, std::size_t end,
               std::vector<std::size_t>& cuts) {
        const std::size_t count = grammar_.rule(rule).productions[prod].symbols.size();
        if (k == count) return pos == end;
        for (std::size_t e : match_symbol(rule, prod, k, pos)) {
            if (e > end) break;
            const auto rest = seq_ends(rule, prod, k + 1, e);
            if (std::find(rest.begin(), rest.end(), end) == rest.end()) continue;
            cuts.push_back(e);
            if (split(rule, prod, k + 1, e, end, cuts)) return true;
            cuts.pop_back();
        }
        return false;
    }

    const Grammar& grammar_;
    Tokens input_;
    std::vector<std::vector<std::optional<std::vector<std::size_t>>>> memo_;
    std::vector<std::vector<bool>> active_;
    std::vector<std::vector<std::vector<Tokens>>> terminals_;
};

} // namespace

std::vector<std::string> tokenize_code(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (ident_char(c)) {
            std::size_t j = i;
            while (j < s.size() && ident_char(s[j])) ++j;
            out.emplace_back(s.substr(i, j - i));
            i = j;
        } else if (c == '\'' || c == '"') {
            std::size_t j = s.find(c, i + 1);
            j = j == std::string_view::npos ? s.size() : j + 1;
            out.emplace_back(s.substr(i, j - i));
            i = j;
        } else if (i + 1 < s.size() && s[i + 1] == '=' && (c == '=' || c == '!' || c == '<' || c == '>')) {
            out.emplace_back(s.substr(i, 2));
            i += 2;
        } else {
            out.emplace_back(1, c);
            ++i;
        }
    }
    return out;
}

std::string render_program(const DerivationNode& tree, const Grammar& grammar) { return Renderer(grammar).run(tree); }

std::optional<DerivationNode> parse_program(std::string_view code, const Grammar& grammar) {
    return Parser(grammar, tokenize_code(code)).parse();
}

std::string strip_code_fence(std::string_view text) {
    const auto open = text.find("```");
    if (open == std::string_view::npos) return std::string(text);
    auto body_start = text.find('\n', open);
    if (body_start == std::string_view::npos) return {};
    ++body_start;
    const auto close = text.find("```", body_start);
    return std::string(text.substr(body_start, close == std::string_view::npos ? std::string_view::npos : close - body_start));
}

} // namespace cyberevo::ge
