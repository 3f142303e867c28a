#pragma once

#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "ideaforge/corpus.hpp"
#include "ideaforge/generate.hpp"
#include "ideaforge/idea.hpp"
#include "ideaforge/judge.hpp"
#include "ideaforge/provider.hpp"

namespace testsupport {

using namespace ideaforge;

/// Provider returning canned responses in order; repeats the last one.
class SequenceProvider : public Provider {
 public:
  explicit SequenceProvider(std::vector<std::string> responses)
      : responses_(std::move(responses)) {}

  ChatResponse complete(const ChatRequest&) override {
    std::lock_guard<std::mutex> lock(mutex_);
    const std::size_t i = std::min(calls_, responses_.size() - 1);
    ++calls_;
    return {responses_[i], std::nullopt, std::chrono::milliseconds{0}};
  }

  std::size_t calls() const { return calls_; }

 private:
  std::vector<std::string> responses_;
  std::size_t calls_ = 0;
  std::mutex mutex_;
};

/// Provider computing the response from the full request.
class FnProvider : public Provider {
 public:
  explicit FnProvider(std::function<std::string(const ChatRequest&)> fn)
      : fn_(std::move(fn)) {}

  ChatResponse complete(const ChatRequest& request) override {
    return {fn_(request), std::nullopt, std::chrono::milliseconds{0}};
  }

 private:
  std::function<std::string(const ChatRequest&)> fn_;
};

inline Role role_for(Provider& provider, std::string model = "test-model") {
  Role role;
  role.provider = &provider;
  role.model_id = std::move(model);
  return role;
}

inline PatentRecord make_patent(std::string id, std::string title = "A device") {
  PatentRecord patent;
  patent.id = std::move(id);
  patent.title = std::move(title);
  patent.abstract = "An abstract describing the device.";
  patent.claims = "1. A claim.";
  patent.description = "A longer description.";
  return patent;
}

inline ProductIdea make_idea(std::string tag) {
  ProductIdea idea;
  idea.title = tag + " title";
  idea.product_description = tag + " description";
  idea.implementation = tag + " implementation";
  idea.differentiation = tag + " differentiation";
  return idea;
}

inline GenerationRecord make_record(std::string prompt_id, std::string patent_id,
                                    ProductIdea idea) {
  GenerationRecord record;
  record.prompt_id = std::move(prompt_id);
  record.patent_id = std::move(patent_id);
  record.idea = std::move(idea);
  return record;
}

inline PromptCandidate make_candidate(std::string id, Domain domain = Domain::NLP) {
  PromptCandidate candidate;
  candidate.id = std::move(id);
  candidate.system_prompt = "You produce one product idea as JSON.";
  candidate.user_template = "Patent:\n{PATENT_JSON}\n\n{LIMITS}\n";
  candidate.domain = domain;
  return candidate;
}

/// Judge reply JSON with the same value for all six criteria.
inline std::string uniform_verdict(const std::string& value) {
  return std::string("{\"technical_validity\":\"") + value +
         "\",\"innovativeness\":\"" + value + "\",\"specificity\":\"" + value +
         "\",\"need_validity\":\"" + value + "\",\"market_size\":\"" + value +
         "\",\"competitive_advantage\":\"" + value + "\"}";
}

/// Judge that always prefers whatever sits in presentation position 1.
inline FnProvider position_biased_judge() {
  return FnProvider([](const ChatRequest&) { return uniform_verdict("1"); });
}

/// Content-keyed judge: the idea whose title contains `winning_tag` wins all
/// six criteria regardless of position.
inline FnProvider content_keyed_judge(std::string winning_tag) {
  return FnProvider([tag = std::move(winning_tag)](const ChatRequest& request) {
    const auto idea1 = request.user_prompt.find("Idea 1:\n");
    const auto idea2 = request.user_prompt.find("Idea 2:\n");
    const std::string first_block = request.user_prompt.substr(idea1, idea2 - idea1);
    const bool tag_is_first = first_block.find(tag) != std::string::npos;
    return uniform_verdict(tag_is_first ? "1" : "2");
  });
}

}  // namespace testsupport
