#pragma once

// Model providers: an HTTP chat-completion client and an offline,
// deterministic template renderer.

#include "hear/error.hpp"
#include "hear/prompts.hpp"

#include <chrono>
#include <functional>
#include <memory>
#include <string>

namespace hear {

struct ProviderConfig {
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model_name = "gpt-4o";
  double temperature = 0.1;
  int max_retries = 3;
  std::chrono::milliseconds timeout{60'000};
  std::string api_key_env = "HEAR_API_KEY";
  /// First retry delay; doubles on each further attempt.
  std::chrono::milliseconds backoff_initial{500};
};

/// Raised by providers for failures worth retrying (timeouts, 429, 5xx).
class TransientProviderError : public Error {
 public:
  using Error::Error;
};

class ModelProvider {
 public:
  virtual ~ModelProvider() = default;
  /// One attempt; may throw TransientProviderError or Error.
  virtual std::string complete(const Prompt& prompt) = 0;
  /// Model name recorded in report provenance.
  virtual std::string model_name() const = 0;
};

/// Renders fixed templates over the prompt's structured fields. Pure: the
/// same prompt always yields byte-identical output. Only quotes strings
/// taken from the UI context.
class MockProvider final : public ModelProvider {
 public:
  std::string complete(const Prompt& prompt) override;
  std::string model_name() const override { return "mock-template"; }
};

/// OpenAI-style `chat/completions` client over cpp-httplib.
class HttpProvider final : public ModelProvider {
 public:
  /// Throws ProviderAuthError when the credential variable is unset.
  explicit HttpProvider(ProviderConfig config);

  std::string complete(const Prompt& prompt) override;
  std::string model_name() const override { return config_.model_name; }

  /// Request body for `prompt`, exposed for tests.
  std::string request_body(const Prompt& prompt) const;

 private:
  ProviderConfig config_;
  std::string api_key_;
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

/// Calls the provider with retries and exponential backoff. Empty
/// completions count as retryable; exhausting retries throws
/// EmptyCompletion, ProviderTimeout or ProviderError. Auth errors are not
/// retried.
std::string invoke_model(const Prompt& prompt, ModelProvider& provider, const ProviderConfig& cfg,
                         const Sleeper& sleep = {});

enum class ProviderKind { Mock, Live };

std::unique_ptr<ModelProvider> make_provider(ProviderKind kind, const ProviderConfig& cfg);

}  // namespace hear
