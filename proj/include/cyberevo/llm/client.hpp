#pragma once

#include "cyberevo/ge/grammar.hpp"
#include "cyberevo/rng.hpp"

#include <chrono>
#include <functional>
#include <mutex>
#include <optional>
#include <string>

namespace cyberevo::llm {

struct Completion {
    std::string text;
    /// Completion tokens reported by the backend, if any.
    std::optional<int> tokens;
};

/// Raised by clients for transport or protocol failures.
class ClientError : public Error {
  public:
    using Error::Error;
};

/// Text-completion backend.
class CompletionClient {
  public:
    virtual ~CompletionClient() = default;
    virtual std::string model() const = 0;
    virtual Completion complete(const std::string& prompt) = 0;
};

/// Returns the controller code embedded in the prompt, unchanged.
class EchoClient final : public CompletionClient {
  public:
    std::string model() const override { return "mock-echo"; }
    Completion complete(const std::string& prompt) override;
};

/// Answers every prompt through a callback.
class FunctionClient final : public CompletionClient {
  public:
    using Fn = std::function<std::string(const std::string&)>;
    explicit FunctionClient(Fn fn, std::string model = "mock-function") : fn_(std::move(fn)), model_(std::move(model)) {}
    std::string model() const override { return model_; }
    Completion complete(const std::string& prompt) override { return {fn_(prompt), std::nullopt}; }

  private:
    Fn fn_;
    std::string model_;
};

/// Offline stand-in for a model: appends one random statement derived from
/// the grammar to the action block of the prompt's code, and with
/// probability `invalid_rate` answers with prose instead. Deterministic for
/// a given seed and call order.
class MockMutationClient final : public CompletionClient {
  public:
    MockMutationClient(const ge::Grammar& grammar, std::uint64_t seed, double invalid_rate = 0.0);
    std::string model() const override { return "mock-mutation"; }
    Completion complete(const std::string& prompt) override;

  private:
    const ge::Grammar* grammar_;
    Rng rng_;
    double invalid_rate_;
    std::mutex mutex_;
};

/// OpenAI-compatible chat completions endpoint.
struct HttpClientConfig {
    /// Base URL, e.g. "http://localhost:8000/v1"; requests go to {url}/chat/completions.
    std::string url = "http://localhost:8000/v1";
    std::string model = "gpt-3.5-turbo";
    /// Environment variable holding the bearer token; unset means no auth header.
    std::string api_key_env = "OPENAI_API_KEY";
    std::chrono::milliseconds timeout{30000};
    double temperature = 0.7;
};

class HttpCompletionClient final : public CompletionClient {
  public:
    explicit HttpCompletionClient(HttpClientConfig config);
    std::string model() const override { return config_.model; }
    /// Throws ClientError on connection failure, timeout, non-200 status or
    /// a malformed response body.
    Completion complete(const std::string& prompt) override;

  private:
    HttpClientConfig config_;
    std::string origin_;
    std::string path_;
};

/// Whitespace-delimited token count, used when the backend reports none.
int count_tokens(std::string_view text) noexcept;

} // namespace cyberevo::llm
