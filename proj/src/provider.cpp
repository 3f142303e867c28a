#include "ideaforge/provider.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "ideaforge/errors.hpp"

namespace ideaforge {

namespace {

using Clock = std::chrono::steady_clock;

std::chrono::milliseconds elapsed_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
}

}  // namespace

MockScript MockScript::from_json(const nlohmann::json& j) {
  MockScript script;
  if (j.contains("rules")) {
    for (const auto& rule_json : j.at("rules")) {
      MockRule rule;
      const auto& match = rule_json.at("match");
      if (match.is_string()) {
        rule.match.push_back(match.get<std::string>());
      } else {
        rule.match = match.get<std::vector<std::string>>();
      }
      rule.response = rule_json.at("response").is_string()
                          ? rule_json.at("response").get<std::string>()
                          : rule_json.at("response").dump();
      script.rules.push_back(std::move(rule));
    }
  }
  if (j.contains("default")) {
    script.default_response = j.at("default").is_string()
                                  ? j.at("default").get<std::string>()
                                  : j.at("default").dump();
  }
  return script;
}

MockScript MockScript::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read mock script " + path.string());
  nlohmann::json j = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    throw Error(ErrorCode::ConfigError, "mock script is not valid JSON: " + path.string());
  }
  return from_json(j);
}

ChatResponse ScriptedMockProvider::complete(const ChatRequest& request) {
  const std::string* reply = &script_.default_response;
  for (const auto& rule : script_.rules) {
    bool all = true;
    for (const auto& needle : rule.match) {
      if (request.user_prompt.find(needle) == std::string::npos) {
        all = false;
        break;
      }
    }
    if (all) {
      reply = &rule.response;
      break;
    }
  }
  if (reply->empty()) {
    throw Error(ErrorCode::Refusal, "mock produced empty response");
  }
  return ChatResponse{*reply, std::nullopt, std::chrono::milliseconds{0}};
}

HttpProviderConfig HttpProviderConfig::from_env() {
  HttpProviderConfig config;
  if (const char* url = std::getenv("PROVIDER_URL")) config.base_url = url;
  if (const char* key = std::getenv("PROVIDER_KEY")) config.api_key = key;
  if (config.base_url.empty()) {
    throw Error(ErrorCode::ConfigError, "PROVIDER_URL is not set");
  }
  return config;
}

HttpProvider::HttpProvider(HttpProviderConfig config) : config_(std::move(config)) {
  // Split scheme://host[:port] from an optional path prefix such as /v1.
  const auto& url = config_.base_url;
  auto scheme_end = url.find("://");
  auto path_start = url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (path_start == std::string::npos) {
    host_ = url;
  } else {
    host_ = url.substr(0, path_start);
    path_prefix_ = url.substr(path_start);
    while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
  }
}

ChatResponse HttpProvider::complete(const ChatRequest& request) {
  nlohmann::json body;
  body["model"] = request.model_id;
  body["temperature"] = request.temperature;
  if (request.max_output > 0) body["max_tokens"] = request.max_output;
  body["messages"] = nlohmann::json::array({
      {{"role", "system"}, {"content", request.system_prompt}},
      {{"role", "user"}, {"content", request.user_prompt}},
  });
  const std::string payload = body.dump();

  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }

  const auto start = Clock::now();
  std::string last_failure = "no attempt made";
  auto backoff = config_.initial_backoff;

  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    httplib::Client client(host_);
    client.set_connection_timeout(config_.timeout);
    client.set_read_timeout(config_.timeout);

    auto result = client.Post(path_prefix_ + "/chat/completions", headers, payload,
                              "application/json");
    if (!result) {
      last_failure = "connection failed: " + httplib::to_string(result.error());
      continue;
    }
    if (result->status == 429 || result->status >= 500) {
      last_failure = "HTTP " + std::to_string(result->status);
      continue;  // transient, retry
    }
    if (result->status != 200) {
      throw Error(ErrorCode::Transport,
                  "HTTP " + std::to_string(result->status) + ": " + result->body);
    }

    nlohmann::json reply = nlohmann::json::parse(result->body, nullptr, false);
    if (reply.is_discarded() || !reply.contains("choices") || reply["choices"].empty()) {
      throw Error(ErrorCode::Transport, "malformed chat-completions response");
    }
    ChatResponse response;
    response.text =
        reply["choices"][0].value("message", nlohmann::json::object()).value("content", "");
    if (reply.contains("usage")) {
      TokenUsage usage;
      usage.prompt_tokens = reply["usage"].value("prompt_tokens", 0L);
      usage.completion_tokens = reply["usage"].value("completion_tokens", 0L);
      response.usage = usage;
    }
    response.latency = elapsed_since(start);
    if (response.text.empty()) {
      throw Error(ErrorCode::Refusal, "provider returned empty text");
    }
    return response;
  }
  throw Error(ErrorCode::Transport,
              "request failed after " + std::to_string(config_.max_attempts) +
                  " attempts (" + last_failure + ")");
}

CostGuard::CostGuard(long limit) : limit_(limit) {
  if (limit <= 0) throw Error(ErrorCode::Precondition, "budget limit must be > 0");
}

void CostGuard::acquire() {
  const long before = used_.fetch_add(1);
  if (!permits(before, limit_)) {
    throw Error(ErrorCode::BudgetExceeded,
                "call budget of " + std::to_string(limit_) + " exhausted");
  }
}

ChatResponse Role::complete(std::string system_prompt, std::string user_prompt) const {
  if (provider == nullptr) {
    throw Error(ErrorCode::Precondition, "role has no provider configured");
  }
  ChatRequest request;
  request.system_prompt = std::move(system_prompt);
  request.user_prompt = std::move(user_prompt);
  request.model_id = model_id;
  request.temperature = temperature;
  request.max_output = max_output;
  return provider->complete(request);
}

}  // namespace ideaforge
