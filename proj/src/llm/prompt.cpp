#include "cyberevo/llm/prompt.hpp"

#include "cyberevo/embedded_data.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace cyberevo::llm {

namespace {

std::string trim_blank_lines(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    for (std::size_t nl = s.find('\n'); nl != std::string::npos; nl = s.find('\n', start)) {
        if (s.find_first_not_of(" \t\r", start) < nl) break;
        start = nl + 1;
    }
    return s.substr(start);
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
    for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
        s.replace(pos, from.size(), to);
}

} // namespace

PromptTemplate PromptTemplate::parse(std::string_view text) {
    PromptTemplate t;
    std::string* current = nullptr;
    bool seen[4] = {false, false, false, false};
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.size() > 2 && line.front() == '[' && line.back() == ']') {
            const std::string name = line.substr(1, line.size() - 2);
            std::size_t idx = 0;
            if (name == "persona") current = &t.persona, idx = 0;
            else if (name == "grammar") current = &t.grammar, idx = 1;
            else if (name == "code") current = &t.code, idx = 2;
            else if (name == "task") current = &t.task, idx = 3;
            else throw Error("prompt template: unknown section [" + name + "]");
            if (seen[idx]) throw Error("prompt template: duplicate section [" + name + "]");
            seen[idx] = true;
            continue;
        }
        if (!current) {
            if (line.empty() || line.front() == '#') continue;
            throw Error("prompt template: text before the first section");
        }
        *current += line;
        *current += '\n';
    }
    for (std::string* s : {&t.persona, &t.grammar, &t.code, &t.task}) *s = trim_blank_lines(*s);
    return t;
}

PromptTemplate PromptTemplate::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open prompt template " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

const PromptTemplate& PromptTemplate::standard() {
    static const PromptTemplate t = parse(embedded_file("prompts/mutation.txt"));
    return t;
}

std::string build_prompt(const PromptTemplate& tmpl, Side side, std::string_view grammar_text, std::string_view code) {
    const std::pair<const char*, const std::string*> sections[] = {
        {"persona", &tmpl.persona}, {"grammar", &tmpl.grammar}, {"code", &tmpl.code}, {"task", &tmpl.task}};
    std::string out;
    for (const auto& [name, body] : sections) {
        if (body->find_first_not_of(" \t\r\n") == std::string::npos)
            throw Error(std::string("prompt template: empty ") + name + " section");
        std::string s = *body;
        replace_all(s, "{side}", to_string(side));
        replace_all(s, "{grammar}", grammar_text);
        replace_all(s, "{code}", code.substr(0, code.find_last_not_of('\n') + 1));
        if (!out.empty()) out += "\n\n";
        out += s;
    }
    out += '\n';
    return out;
}

} // namespace cyberevo::llm
