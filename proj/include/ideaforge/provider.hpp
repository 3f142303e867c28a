#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ideaforge {

struct ChatRequest {
  std::string system_prompt;
  std::string user_prompt;
  std::string model_id;
  double temperature = 0.0;
  int max_output = 0;  // advisory token cap; 0 = provider default
};

struct TokenUsage {
  long prompt_tokens = 0;
  long completion_tokens = 0;
};

struct ChatResponse {
  std::string text;
  std::optional<TokenUsage> usage;
  std::chrono::milliseconds latency{0};
};

/// Chat-completion contract shared by the generator, judge, pre-screen and
/// refiner roles. Implementations must be safe for concurrent complete calls.
class Provider {
 public:
  virtual ~Provider() = default;
  virtual ChatResponse complete(const ChatRequest& request) = 0;
};

/// One scripted reply: fires when every substring in `match` occurs in the
/// user prompt. An empty match list fires on everything.
struct MockRule {
  std::vector<std::string> match;
  std::string response;
};

struct MockScript {
  std::vector<MockRule> rules;  // checked in order, first match wins
  std::string default_response;

  static MockScript from_json(const nlohmann::json& j);
  static MockScript load(const std::filesystem::path& path);
};

/// Deterministic offline provider: a pure function of (script, request).
class ScriptedMockProvider : public Provider {
 public:
  explicit ScriptedMockProvider(MockScript script) : script_(std::move(script)) {}

  ChatResponse complete(const ChatRequest& request) override;

 private:
  MockScript script_;
};

struct HttpProviderConfig {
  std::string base_url;  // e.g. https://api.example.com (or .../v1)
  std::string api_key;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{250};  // doubles per retry
  std::chrono::milliseconds timeout{60000};

  /// Reads PROVIDER_URL / PROVIDER_KEY. Throws ConfigError when the URL is
  /// missing.
  static HttpProviderConfig from_env();
};

/// OpenAI-compatible chat-completions client over HTTPS with bounded
/// exponential backoff on transient failures.
class HttpProvider : public Provider {
 public:
  explicit HttpProvider(HttpProviderConfig config);

  ChatResponse complete(const ChatRequest& request) override;

 private:
  HttpProviderConfig config_;
  std::string host_;
  std::string path_prefix_;
};

/// Shared call counter with atomic check-and-increment. `acquire` throws
/// BudgetExceeded once the configured number of calls has been spent.
class CostGuard {
 public:
  explicit CostGuard(long limit);

  static bool permits(long accumulated_calls, long limit) noexcept {
    return accumulated_calls < limit;
  }

  void acquire();
  long used() const noexcept { return used_.load(); }
  long limit() const noexcept { return limit_; }

 private:
  std::atomic<long> used_{0};
  long limit_;
};

/// Applies a CostGuard in front of any provider.
class GuardedProvider : public Provider {
 public:
  GuardedProvider(Provider& inner, CostGuard& guard) : inner_(inner), guard_(guard) {}

  ChatResponse complete(const ChatRequest& request) override {
    guard_.acquire();
    return inner_.complete(request);
  }

 private:
  Provider& inner_;
  CostGuard& guard_;
};

/// A provider bound to one pipeline role (model id + sampling settings).
struct Role {
  Provider* provider = nullptr;
  std::string model_id;
  double temperature = 0.0;
  int max_output = 0;

  ChatResponse complete(std::string system_prompt, std::string user_prompt) const;
};

}  // namespace ideaforge
