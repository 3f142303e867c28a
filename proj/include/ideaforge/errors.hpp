#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ideaforge {

enum class ErrorCode {
  // corpus
  MalformedJson,
  MissingField,
  EmptyCorpus,
  DuplicateId,
  UnknownDomain,
  // idea
  NoJsonObject,
  MissingIdeaField,
  WrongType,
  // provider
  Transport,
  Refusal,
  BudgetExceeded,
  // generate
  TemplateError,
  GenerationFailed,
  // judge
  JudgeUnparseable,
  MissingCriterion,
  MismatchedPatent,
  // elo
  UnknownPrompt,
  TooFewPrompts,
  // refine
  RefinerUnparseable,
  // select
  MissingRecords,
  IncompleteRecords,
  // store / cli
  IoError,
  UsageError,
  ConfigError,
  // violated caller contract
  Precondition,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for all pipeline failures; the code tells callers
/// (and tests) which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ideaforge
