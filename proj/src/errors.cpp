#include "ideaforge/errors.hpp"

namespace ideaforge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedJson: return "MalformedJson";
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::UnknownDomain: return "UnknownDomain";
    case ErrorCode::NoJsonObject: return "NoJsonObject";
    case ErrorCode::MissingIdeaField: return "MissingIdeaField";
    case ErrorCode::WrongType: return "WrongType";
    case ErrorCode::Transport: return "Transport";
    case ErrorCode::Refusal: return "Refusal";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::TemplateError: return "TemplateError";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::JudgeUnparseable: return "JudgeUnparseable";
    case ErrorCode::MissingCriterion: return "MissingCriterion";
    case ErrorCode::MismatchedPatent: return "MismatchedPatent";
    case ErrorCode::UnknownPrompt: return "UnknownPrompt";
    case ErrorCode::TooFewPrompts: return "TooFewPrompts";
    case ErrorCode::RefinerUnparseable: return "RefinerUnparseable";
    case ErrorCode::MissingRecords: return "MissingRecords";
    case ErrorCode::IncompleteRecords: return "IncompleteRecords";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::Precondition: return "Precondition";
  }
  return "UnknownError";
}

}  // namespace ideaforge
