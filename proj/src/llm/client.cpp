#include "cyberevo/llm/client.hpp"

#include "cyberevo/ge/derivation.hpp"
#include "cyberevo/ge/program_text.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace cyberevo::llm {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

std::size_t indent_of(const std::string& line) { return line.find_first_not_of(' '); }

bool starts_with_trimmed(const std::string& line, std::string_view prefix) {
    const auto i = indent_of(line);
    return i != std::string::npos && std::string_view(line).substr(i).starts_with(prefix);
}

/// Lines of the first statement of the action block of a rendered program.
std::vector<std::string> first_action_statement(const std::string& program) {
    const auto lines = split_lines(program);
    std::vector<std::string> out;
    bool inside = false;
    std::size_t base = 0;
    for (const auto& line : lines) {
        if (starts_with_trimmed(line, "#Select action")) {
            inside = true;
            base = indent_of(line);
            continue;
        }
        if (!inside) continue;
        if (starts_with_trimmed(line, "#Select target")) break;
        const auto ind = indent_of(line);
        if (ind == std::string::npos) continue;
        if (ind == base && !out.empty()) break;
        out.push_back(line);
    }
    return out;
}

} // namespace

int count_tokens(std::string_view text) noexcept {
    int n = 0;
    bool in_token = false;
    for (char c : text) {
        const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
        if (!space && !in_token) ++n;
        in_token = !space;
    }
    return n;
}

Completion EchoClient::complete(const std::string& prompt) {
    return {"```python\n" + ge::strip_code_fence(prompt) + "```\n", std::nullopt};
}

MockMutationClient::MockMutationClient(const ge::Grammar& grammar, std::uint64_t seed, double invalid_rate)
    : grammar_(&grammar), rng_(seed), invalid_rate_(invalid_rate) {}

Completion MockMutationClient::complete(const std::string& prompt) {
    std::lock_guard lock(mutex_);
    if (rng_.bernoulli(invalid_rate_))
        return {"Here is an improved agent. It now scans every host before exploiting it.", std::nullopt};
    std::vector<std::string> statement;
    for (int attempt = 0; attempt < 50 && statement.empty(); ++attempt) {
        std::vector<ge::Codon> genome(64);
        for (auto& c : genome) c = static_cast<ge::Codon>(rng_.uniform_int(0, ge::kMaxCodon));
        if (auto tree = ge::map_genome(genome, *grammar_))
            statement = first_action_statement(ge::render_program(*tree, *grammar_));
    }
    const auto lines = split_lines(ge::strip_code_fence(prompt));
    std::string out = "```python\n";
    for (const auto& line : lines) {
        if (starts_with_trimmed(line, "#Select target"))
            for (const auto& s : statement) out += s + "\n";
        out += line + "\n";
    }
    out += "```\n";
    return {out, std::nullopt};
}

HttpCompletionClient::HttpCompletionClient(HttpClientConfig config) : config_(std::move(config)) {
    const auto scheme_end = config_.url.find("://");
    if (scheme_end == std::string::npos) throw Error("completion client: URL needs a scheme: " + config_.url);
    const auto path_start = config_.url.find('/', scheme_end + 3);
    origin_ = config_.url.substr(0, path_start);
    path_ = path_start == std::string::npos ? "" : config_.url.substr(path_start);
    while (!path_.empty() && path_.back() == '/') path_.pop_back();
    path_ += "/chat/completions";
}

Completion HttpCompletionClient::complete(const std::string& prompt) {
    httplib::Client cli(origin_);
    if (!cli.is_valid()) throw ClientError("completion client: unsupported endpoint " + origin_);
    cli.set_connection_timeout(config_.timeout);
    cli.set_read_timeout(config_.timeout);
    cli.set_write_timeout(config_.timeout);
    httplib::Headers headers;
    if (!config_.api_key_env.empty())
        if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key)
            headers.emplace("Authorization", std::string("Bearer ") + key);

    const nlohmann::json body = {
        {"model", config_.model},
        {"temperature", config_.temperature},
        {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
    };
    const auto res = cli.Post(path_, headers, body.dump(), "application/json");
    if (!res) throw ClientError("completion client: " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw ClientError("completion client: HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
    try {
        const auto reply = nlohmann::json::parse(res->body);
        Completion c;
        c.text = reply.at("choices").at(0).at("message").at("content").get<std::string>();
        if (reply.contains("usage") && reply["usage"].contains("completion_tokens"))
            c.tokens = reply["usage"]["completion_tokens"].get<int>();
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ClientError(std::string("completion client: malformed response: ") + e.what());
    }
}

} // namespace cyberevo::llm
