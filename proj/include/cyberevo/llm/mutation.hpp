#pragma once

#include "cyberevo/evo/individual.hpp"
#include "cyberevo/llm/client.hpp"
#include "cyberevo/llm/prompt.hpp"

#include <mutex>
#include <vector>

namespace cyberevo::llm {

/// Validity, token and latency accounting of LLM mutation calls.
struct LlmStats {
    std::size_t valid = 0;
    std::size_t invalid = 0;
    /// One entry per received response.
    std::vector<int> tokens;
    /// Seconds, one entry per call.
    std::vector<double> latency;

    std::size_t calls() const noexcept { return valid + invalid; }
    void record(bool ok, std::optional<int> response_tokens, double seconds);
    void merge(const LlmStats& other);
};

struct LlmReport {
    std::size_t calls = 0;
    std::size_t valid = 0;
    std::size_t invalid = 0;
    double valid_pct = 0.0;
    double invalid_pct = 0.0;
    int token_min = 0;
    int token_max = 0;
    double token_mean = 0.0;
    double latency_min = 0.0;
    double latency_median = 0.0;
    double latency_max = 0.0;
    double latency_mean = 0.0;
};

/// Throws Error when no call was recorded.
LlmReport summarize_stats(const LlmStats& stats);
std::string format_report(const LlmReport& report, std::string_view model);

/// One LLM mutation: renders a uniformly chosen controller program of the
/// team, asks the client for a mutated version and parses the reply against
/// the grammar. Accepted replies give a detached individual carrying the new
/// program; anything else (unparsable text, transport failure) gives an
/// invalid individual. Never throws for client failures.
evo::Individual llm_mutate(CompletionClient& client, const evo::Individual& ind, const evo::Representation& rep,
                           LlmStats& stats, Rng& rng, const PromptTemplate& tmpl = PromptTemplate::standard());

/// PhenotypeMutator backed by a completion client. Stats accumulation is
/// serialized so one mutator may serve several populations.
class LlmMutator final : public evo::PhenotypeMutator {
  public:
    explicit LlmMutator(CompletionClient& client, PromptTemplate tmpl = PromptTemplate::standard())
        : client_(&client), template_(std::move(tmpl)) {}
    evo::Individual mutate(const evo::Individual& ind, const evo::Representation& rep, Rng& rng) override;
    LlmStats stats() const;

  private:
    CompletionClient* client_;
    PromptTemplate template_;
    mutable std::mutex mutex_;
    LlmStats stats_;
};

} // namespace cyberevo::llm
