#include "cyberevo/ge/grammar.hpp"

#include "cyberevo/kv_config.hpp"

#include <cctype>
#include <set>

namespace cyberevo::ge {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct RawRule {
    std::string name;
    std::string body;
    std::size_t line = 0;
};

std::vector<Production> parse_body(const RawRule& raw) {
    std::vector<Production> out(1);
    const std::string& s = raw.body;
    const auto fail = [&](const std::string& msg) {
        throw Error("grammar rule '" + raw.name + "' (line " + std::to_string(raw.line) + "): " + msg);
    };
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (c == '\n' || std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '|') {
            out.emplace_back();
            ++i;
        } else if (c == '"') {
            std::size_t j = i + 1;
            while (j < s.size() && s[j] != '"' && s[j] != '\n' && s.compare(j, 2, "''") != 0) ++j;
            std::string text(trim(std::string_view(s).substr(i + 1, j - i - 1)));
            if (text.empty()) fail("empty terminal");
            out.back().symbols.push_back({true, std::move(text), 0});
            if (j < s.size() && s[j] == '"') i = j + 1;
            else if (j < s.size() && s[j] == '\'') i = j + 2;
            else i = j;
        } else if (ident_start(c)) {
            std::size_t j = i;
            while (j < s.size() && ident_char(s[j])) ++j;
            out.back().symbols.push_back({false, s.substr(i, j - i), 0});
            i = j;
        } else {
            fail(std::string("unexpected character '") + c + "'");
        }
    }
    for (const auto& p : out)
        if (p.symbols.empty()) fail("empty production");
    return out;
}

std::string quote(const std::string& terminal) {
    if (terminal.find('"') != std::string::npos || terminal.find("''") != std::string::npos ||
        terminal.find('\n') != std::string::npos)
        throw Error("terminal cannot be written in grammar notation: " + terminal);
    return "\"" + terminal + "\"";
}

} // namespace

Grammar Grammar::parse(std::string_view text) {
    std::vector<RawRule> raw;
    std::size_t line_no = 0;
    for (std::string_view line : split(text, '\n')) {
        ++line_no;
        // split() trims, so recover the indentation from the original text.
        const auto offset = static_cast<std::size_t>(line.data() - text.data());
        const bool indented = line.empty() || (offset > 0 && text[offset - 1] != '\n');
        if (line.empty() || line.front() == '#') continue;
        if (!indented && ident_start(line.front())) {
            std::size_t j = 0;
            while (j < line.size() && ident_char(line[j])) ++j;
            std::size_t k = j;
            while (k < line.size() && (line[k] == ' ' || line[k] == '\t')) ++k;
            if (k < line.size() && line[k] == ':') {
                raw.push_back({std::string(line.substr(0, j)), std::string(line.substr(k + 1)), line_no});
                continue;
            }
        }
        if (raw.empty()) throw Error("grammar line " + std::to_string(line_no) + ": text before the first rule");
        raw.back().body += '\n';
        raw.back().body += line;
    }
    if (raw.empty()) throw Error("grammar has no rules");
    std::vector<Rule> rules;
    for (const auto& r : raw) rules.push_back({r.name, parse_body(r)});
    return from_rules(std::move(rules));
}

Grammar Grammar::from_rules(std::vector<Rule> rules) {
    if (rules.empty()) throw Error("grammar has no rules");
    Grammar g;
    g.rules_ = std::move(rules);
    std::set<std::string, std::less<>> names;
    for (const auto& r : g.rules_) {
        if (!names.insert(r.name).second) throw Error("duplicate grammar rule '" + r.name + "'");
        if (r.productions.empty()) throw Error("grammar rule '" + r.name + "' has no productions");
    }
    for (auto& r : g.rules_)
        for (auto& p : r.productions) {
            if (p.symbols.empty()) throw Error("grammar rule '" + r.name + "' has an empty production");
            for (auto& s : p.symbols) {
                if (s.terminal) continue;
                const auto idx = g.find_rule(s.text);
                if (!idx) throw Error("grammar rule '" + r.name + "' references undefined symbol '" + s.text + "'");
                s.rule = *idx;
            }
        }
    return g;
}

std::optional<std::size_t> Grammar::find_rule(std::string_view name) const noexcept {
    for (std::size_t i = 0; i < rules_.size(); ++i)
        if (rules_[i].name == name) return i;
    return std::nullopt;
}

const Rule& Grammar::rule(std::string_view name) const {
    const auto idx = find_rule(name);
    if (!idx) throw Error("grammar has no rule '" + std::string(name) + "'");
    return rules_[*idx];
}

std::size_t Grammar::production_count() const noexcept {
    std::size_t n = 0;
    for (const auto& r : rules_) n += r.productions.size();
    return n;
}

std::vector<std::string> Grammar::alternatives(std::string_view name) const {
    std::vector<std::string> out;
    for (const auto& p : rule(name).productions)
        if (p.symbols.size() == 1 && p.symbols[0].terminal) out.push_back(p.symbols[0].text);
    return out;
}

std::string Grammar::text() const {
    std::string out;
    for (const auto& r : rules_) {
        const std::string pad(r.name.size(), ' ');
        for (std::size_t i = 0; i < r.productions.size(); ++i) {
            out += i == 0 ? r.name + ": " : pad + "| ";
            const auto& symbols = r.productions[i].symbols;
            for (std::size_t k = 0; k < symbols.size(); ++k) {
                if (k) out += ' ';
                out += symbols[k].terminal ? quote(symbols[k].text) : symbols[k].text;
            }
            out += '\n';
        }
    }
    return out;
}

} // namespace cyberevo::ge
