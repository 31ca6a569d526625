#include "cyberevo/llm/mutation.hpp"

#include "cyberevo/ge/program_text.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>

namespace cyberevo::llm {

void LlmStats::record(bool ok, std::optional<int> response_tokens, double seconds) {
    ++(ok ? valid : invalid);
    if (response_tokens) tokens.push_back(*response_tokens);
    latency.push_back(seconds);
}

void LlmStats::merge(const LlmStats& other) {
    valid += other.valid;
    invalid += other.invalid;
    tokens.insert(tokens.end(), other.tokens.begin(), other.tokens.end());
    latency.insert(latency.end(), other.latency.begin(), other.latency.end());
}

LlmReport summarize_stats(const LlmStats& stats) {
    if (stats.calls() == 0) throw Error("summarize_stats: no calls recorded");
    LlmReport r;
    r.calls = stats.calls();
    r.valid = stats.valid;
    r.invalid = stats.invalid;
    r.valid_pct = 100.0 * static_cast<double>(stats.valid) / static_cast<double>(r.calls);
    r.invalid_pct = 100.0 * static_cast<double>(stats.invalid) / static_cast<double>(r.calls);
    if (!stats.tokens.empty()) {
        const auto [lo, hi] = std::minmax_element(stats.tokens.begin(), stats.tokens.end());
        r.token_min = *lo;
        r.token_max = *hi;
        r.token_mean = std::accumulate(stats.tokens.begin(), stats.tokens.end(), 0.0) / static_cast<double>(stats.tokens.size());
    }
    if (!stats.latency.empty()) {
        std::vector<double> l = stats.latency;
        std::sort(l.begin(), l.end());
        r.latency_min = l.front();
        r.latency_max = l.back();
        const std::size_t n = l.size();
        r.latency_median = n % 2 ? l[n / 2] : 0.5 * (l[n / 2 - 1] + l[n / 2]);
        r.latency_mean = std::accumulate(l.begin(), l.end(), 0.0) / static_cast<double>(n);
    }
    return r;
}

std::string format_report(const LlmReport& r, std::string_view model) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "model %.*s: calls %zu, valid %zu (%.1f%%), invalid %zu (%.1f%%), tokens min %d max %d mean %.1f, "
                  "latency s min %.3f median %.3f max %.3f mean %.3f",
                  static_cast<int>(model.size()), model.data(), r.calls, r.valid, r.valid_pct, r.invalid, r.invalid_pct,
                  r.token_min, r.token_max, r.token_mean, r.latency_min, r.latency_median, r.latency_max, r.latency_mean);
    return buf;
}

evo::Individual llm_mutate(CompletionClient& client, const evo::Individual& ind, const evo::Representation& rep,
                           LlmStats& stats, Rng& rng, const PromptTemplate& tmpl) {
    if (!rep.grammar_based()) throw Error("llm_mutate: representation has no grammar");
    if (ind.programs.empty()) throw Error("llm_mutate: individual has no decoded program");
    const ge::Grammar& grammar = rep.grammar();
    const std::size_t slot = rng.index(ind.programs.size());
    const std::string prompt = build_prompt(tmpl, rep.side, grammar.text(), ge::render_program(*ind.programs[slot], grammar));

    const auto start = std::chrono::steady_clock::now();
    std::optional<Completion> reply;
    try {
        reply = client.complete(prompt);
    } catch (const std::exception&) {
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    evo::Individual out;
    out.genome = ind.genome;
    if (reply) {
        if (auto tree = ge::parse_program(ge::strip_code_fence(reply->text), grammar)) {
            auto programs = ind.programs;
            programs[slot] = std::make_shared<const ge::DerivationNode>(std::move(*tree));
            try {
                out.team = evo::team_from_programs(rep, programs);
                out.programs = std::move(programs);
                out.detached = true;
            } catch (const Error&) {
                out.team.reset();
            }
        }
    }
    out.invalid = !out.decoded();
    const std::optional<int> tokens = reply ? std::optional<int>(reply->tokens.value_or(count_tokens(reply->text)))
                                            : std::nullopt;
    stats.record(!out.invalid, tokens, seconds);
    return out;
}

evo::Individual LlmMutator::mutate(const evo::Individual& ind, const evo::Representation& rep, Rng& rng) {
    LlmStats local;
    auto out = llm_mutate(*client_, ind, rep, local, rng, template_);
    std::lock_guard lock(mutex_);
    stats_.merge(local);
    return out;
}

LlmStats LlmMutator::stats() const {
    std::lock_guard lock(mutex_);
    return stats_;
}

} // namespace cyberevo::llm
