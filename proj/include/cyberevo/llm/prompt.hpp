#pragma once

#include "cyberevo/common.hpp"

#include <string>
#include <string_view>

namespace cyberevo::llm {

/// Mutation prompt in four sections. Sections may use the placeholders
/// {side}, {grammar} and {code}.
struct PromptTemplate {
    std::string persona;
    std::string grammar;
    std::string code;
    std::string task;

    /// Reads `[persona]`, `[grammar]`, `[code]` and `[task]` sections; lines
    /// starting with '#' before the first section are comments.
    static PromptTemplate parse(std::string_view text);
    static PromptTemplate load(const std::string& path);
    /// The shipped template (data/prompts/mutation.txt).
    static const PromptTemplate& standard();
};

/// Prompt text: persona, grammar, code and task sections in that order,
/// separated by blank lines. Throws Error when a section is empty.
std::string build_prompt(const PromptTemplate& tmpl, Side side, std::string_view grammar_text, std::string_view code);

} // namespace cyberevo::llm
