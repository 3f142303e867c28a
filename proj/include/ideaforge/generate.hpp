#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ideaforge/corpus.hpp"
#include "ideaforge/idea.hpp"
#include "ideaforge/provider.hpp"

namespace ideaforge {

inline constexpr std::string_view kPatentPlaceholder = "{PATENT_JSON}";
inline constexpr std::string_view kLimitsPlaceholder = "{LIMITS}";

/// A versioned prompt under optimization. The user template must contain
/// {PATENT_JSON} exactly once and {LIMITS} exactly once, in that order, with
/// nothing but whitespace after {LIMITS} (the limits restatement has to be
/// the final content of every assembled prompt).
struct PromptCandidate {
  std::string id;
  std::vector<std::string> parent_ids;
  std::string system_prompt;
  std::string user_template;
  Domain domain = Domain::NLP;
  std::string notes;
};

nlohmann::ordered_json candidate_to_json(const PromptCandidate& candidate);
PromptCandidate candidate_from_json(const nlohmann::json& j);

/// Deterministic content-derived id: "<prefix>-<12 hex digits>".
std::string derive_candidate_id(std::string_view prefix, const PromptCandidate& candidate);

/// Throws TemplateError if the template violates the placeholder contract.
void validate_template(std::string_view user_template);

/// The trailing restatement sentence for the given limits.
std::string limits_restatement(const FieldLimits& limits);

/// Substitutes the serialized patent and the limits restatement into the
/// candidate's template. Placeholders are located in the template before
/// substitution, so placeholder-looking text inside the patent is untouched.
/// The restatement is always the suffix of the returned prompt.
std::string assemble_user_prompt(const PromptCandidate& candidate,
                                 const PatentRecord& patent,
                                 const FieldLimits& limits);

/// One generated, truncated, submission-ready idea.
struct GenerationRecord {
  std::string prompt_id;
  std::string patent_id;
  std::string raw_response;
  ProductIdea idea;           // post-truncation, always within limits
  ViolationReport violation;  // pre-truncation excess
  int attempts = 1;
};

nlohmann::ordered_json generation_record_to_json(const GenerationRecord& record);
GenerationRecord generation_record_from_json(const nlohmann::json& j);

struct GenerationFailure {
  std::string patent_id;
  std::string message;
};

struct GenerationBatch {
  std::vector<GenerationRecord> records;    // canonical patent order
  std::vector<GenerationFailure> failures;  // canonical patent order

  bool ok() const { return failures.empty(); }
};

struct GenerateOptions {
  int max_attempts = 3;  // fresh provider calls per patent on unparseable output
  int parallelism = 1;
};

/// Generates one idea for one patent: call, parse, retry on parse failure,
/// truncate. Throws GenerationFailed when every attempt was unparseable;
/// provider errors propagate.
GenerationRecord generate_idea(const Role& generator, const PromptCandidate& candidate,
                               const PatentRecord& patent, const FieldLimits& limits,
                               int max_attempts = 3);

/// One record per patent, output in canonical patent order regardless of
/// execution order. Failures are collected per patent instead of aborting
/// the batch.
GenerationBatch generate_set(const Role& generator, const PromptCandidate& candidate,
                             const std::vector<PatentRecord>& corpus,
                             const FieldLimits& limits,
                             const GenerateOptions& options = {});

/// Generation records indexed for judging and selection.
class RecordIndex {
 public:
  void add(GenerationRecord record);

  bool has(const std::string& prompt_id, const std::string& patent_id) const;
  const GenerationRecord& get(const std::string& prompt_id,
                              const std::string& patent_id) const;  // throws MissingRecords
  const std::map<std::string, GenerationRecord>* for_prompt(
      const std::string& prompt_id) const;
  std::vector<std::string> prompt_ids() const;

  /// True when `prompt_id` has a record for every patent in `corpus`.
  bool complete_for(const std::string& prompt_id,
                    const std::vector<PatentRecord>& corpus) const;

 private:
  std::map<std::string, std::map<std::string, GenerationRecord>> by_prompt_;
};

}  // namespace ideaforge
