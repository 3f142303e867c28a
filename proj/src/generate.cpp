#include "ideaforge/generate.hpp"

#include <cstdio>
#include <sstream>

#include "ideaforge/errors.hpp"
#include "ideaforge/rng.hpp"
#include "parallel_util.hpp"

namespace ideaforge {

namespace {

struct PlaceholderSpan {
  std::size_t patent_pos;
  std::size_t limits_pos;
};

PlaceholderSpan locate_placeholders(std::string_view tmpl) {
  const auto patent_pos = tmpl.find(kPatentPlaceholder);
  if (patent_pos == std::string_view::npos) {
    throw Error(ErrorCode::TemplateError, "user_template lacks {PATENT_JSON}");
  }
  if (tmpl.find(kPatentPlaceholder, patent_pos + 1) != std::string_view::npos) {
    throw Error(ErrorCode::TemplateError, "{PATENT_JSON} appears more than once");
  }
  const auto limits_pos = tmpl.find(kLimitsPlaceholder);
  if (limits_pos == std::string_view::npos) {
    throw Error(ErrorCode::TemplateError, "user_template lacks {LIMITS}");
  }
  if (tmpl.find(kLimitsPlaceholder, limits_pos + 1) != std::string_view::npos) {
    throw Error(ErrorCode::TemplateError, "{LIMITS} appears more than once");
  }
  if (limits_pos < patent_pos) {
    throw Error(ErrorCode::TemplateError, "{LIMITS} must come after {PATENT_JSON}");
  }
  const auto tail = tmpl.substr(limits_pos + kLimitsPlaceholder.size());
  if (tail.find_first_not_of(" \t\r\n") != std::string_view::npos) {
    throw Error(ErrorCode::TemplateError,
                "only whitespace may follow {LIMITS}; the restatement must end the prompt");
  }
  return {patent_pos, limits_pos};
}

}  // namespace

nlohmann::ordered_json candidate_to_json(const PromptCandidate& candidate) {
  nlohmann::ordered_json j;
  j["id"] = candidate.id;
  j["parent_ids"] = candidate.parent_ids;
  j["system_prompt"] = candidate.system_prompt;
  j["user_template"] = candidate.user_template;
  j["domain"] = std::string(to_string(candidate.domain));
  j["notes"] = candidate.notes;
  return j;
}

PromptCandidate candidate_from_json(const nlohmann::json& j) {
  PromptCandidate candidate;
  candidate.id = j.at("id").get<std::string>();
  if (j.contains("parent_ids")) {
    candidate.parent_ids = j.at("parent_ids").get<std::vector<std::string>>();
  }
  candidate.system_prompt = j.at("system_prompt").get<std::string>();
  candidate.user_template = j.at("user_template").get<std::string>();
  candidate.domain = domain_from_string(j.at("domain").get<std::string>());
  candidate.notes = j.value("notes", "");
  return candidate;
}

std::string derive_candidate_id(std::string_view prefix, const PromptCandidate& candidate) {
  std::string material(candidate.system_prompt);
  material += '\x1f';
  material += candidate.user_template;
  for (const auto& parent : candidate.parent_ids) {
    material += '\x1f';
    material += parent;
  }
  const std::uint64_t h = fnv1a64(material);
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%012llx",
                static_cast<unsigned long long>(h & 0xFFFFFFFFFFFFULL));
  return std::string(prefix) + "-" + buffer;
}

void validate_template(std::string_view user_template) {
  locate_placeholders(user_template);
}

std::string limits_restatement(const FieldLimits& limits) {
  std::ostringstream out;
  const char* unit = limits.count_mode == CountMode::Bytes ? "bytes" : "characters";
  out << "Strict output limits: title ≤ " << limits.title_max << " " << unit
      << "; product_description ≤ " << limits.description_max << " " << unit
      << "; implementation ≤ " << limits.implementation_max << " " << unit
      << "; differentiation ≤ " << limits.differentiation_max << " " << unit << ".";
  return out.str();
}

std::string assemble_user_prompt(const PromptCandidate& candidate,
                                 const PatentRecord& patent,
                                 const FieldLimits& limits) {
  const std::string_view tmpl = candidate.user_template;
  const auto spans = locate_placeholders(tmpl);

  std::string out;
  out.reserve(tmpl.size() + patent.title.size() + patent.abstract.size() +
              patent.claims.size() + patent.description.size() + 256);
  out.append(tmpl.substr(0, spans.patent_pos));
  out.append(patent_to_json(patent).dump());
  out.append(tmpl.substr(spans.patent_pos + kPatentPlaceholder.size(),
                         spans.limits_pos - spans.patent_pos - kPatentPlaceholder.size()));
  out.append(limits_restatement(limits));  // whitespace-only tail is dropped
  return out;
}

nlohmann::ordered_json generation_record_to_json(const GenerationRecord& record) {
  nlohmann::ordered_json j;
  j["prompt_id"] = record.prompt_id;
  j["patent_id"] = record.patent_id;
  j["idea"] = nlohmann::ordered_json::parse(serialize_idea(record.idea));
  j["violation"] = {{"title", record.violation.title_excess},
                    {"product_description", record.violation.description_excess},
                    {"implementation", record.violation.implementation_excess},
                    {"differentiation", record.violation.differentiation_excess},
                    {"total", record.violation.total_excess()}};
  j["attempts"] = record.attempts;
  j["raw_response"] = record.raw_response;
  return j;
}

GenerationRecord generation_record_from_json(const nlohmann::json& j) {
  GenerationRecord record;
  record.prompt_id = j.at("prompt_id").get<std::string>();
  record.patent_id = j.at("patent_id").get<std::string>();
  record.idea = parse_idea(j.at("idea").dump());
  const auto& v = j.at("violation");
  record.violation.title_excess = v.value("title", 0L);
  record.violation.description_excess = v.value("product_description", 0L);
  record.violation.implementation_excess = v.value("implementation", 0L);
  record.violation.differentiation_excess = v.value("differentiation", 0L);
  record.attempts = j.value("attempts", 1);
  record.raw_response = j.value("raw_response", "");
  return record;
}

GenerationRecord generate_idea(const Role& generator, const PromptCandidate& candidate,
                               const PatentRecord& patent, const FieldLimits& limits,
                               int max_attempts) {
  const std::string user_prompt = assemble_user_prompt(candidate, patent, limits);

  std::string last_error;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    ChatResponse response = generator.complete(candidate.system_prompt, user_prompt);
    try {
      ProductIdea raw_idea = parse_idea(response.text);
      GenerationRecord record;
      record.prompt_id = candidate.id;
      record.patent_id = patent.id;
      record.raw_response = response.text;
      auto [idea, violation] = truncate_idea(raw_idea, limits);
      record.idea = std::move(idea);
      record.violation = violation;
      record.attempts = attempt;
      return record;
    } catch (const Error& e) {
      switch (e.code()) {
        case ErrorCode::NoJsonObject:
        case ErrorCode::MissingIdeaField:
        case ErrorCode::WrongType:
          last_error = e.what();
          break;  // fresh call and try again
        default:
          throw;
      }
    }
  }
  throw Error(ErrorCode::GenerationFailed,
              "patent " + patent.id + ": " + std::to_string(max_attempts) +
                  " attempts unparseable (" + last_error + ")");
}

GenerationBatch generate_set(const Role& generator, const PromptCandidate& candidate,
                             const std::vector<PatentRecord>& corpus,
                             const FieldLimits& limits, const GenerateOptions& options) {
  if (corpus.empty()) {
    throw Error(ErrorCode::Precondition, "generate_set requires a non-empty corpus");
  }

  struct Slot {
    std::optional<GenerationRecord> record;
    std::optional<GenerationFailure> failure;
  };
  std::vector<Slot> slots(corpus.size());

  detail::parallel_for(corpus.size(), options.parallelism, [&](std::size_t i) {
    try {
      slots[i].record =
          generate_idea(generator, candidate, corpus[i], limits, options.max_attempts);
    } catch (const Error& e) {
      slots[i].failure = GenerationFailure{corpus[i].id, e.what()};
    }
  });

  GenerationBatch batch;
  for (auto& slot : slots) {
    if (slot.record) {
      batch.records.push_back(std::move(*slot.record));
    } else {
      batch.failures.push_back(std::move(*slot.failure));
    }
  }
  return batch;
}

void RecordIndex::add(GenerationRecord record) {
  auto patent_id = record.patent_id;
  by_prompt_[record.prompt_id].insert_or_assign(std::move(patent_id), std::move(record));
}

bool RecordIndex::has(const std::string& prompt_id, const std::string& patent_id) const {
  auto it = by_prompt_.find(prompt_id);
  return it != by_prompt_.end() && it->second.count(patent_id) > 0;
}

const GenerationRecord& RecordIndex::get(const std::string& prompt_id,
                                         const std::string& patent_id) const {
  auto it = by_prompt_.find(prompt_id);
  if (it == by_prompt_.end()) throw Error(ErrorCode::MissingRecords, prompt_id);
  auto record = it->second.find(patent_id);
  if (record == it->second.end()) {
    throw Error(ErrorCode::MissingRecords, prompt_id + " has no record for " + patent_id);
  }
  return record->second;
}

const std::map<std::string, GenerationRecord>* RecordIndex::for_prompt(
    const std::string& prompt_id) const {
  auto it = by_prompt_.find(prompt_id);
  return it == by_prompt_.end() ? nullptr : &it->second;
}

std::vector<std::string> RecordIndex::prompt_ids() const {
  std::vector<std::string> ids;
  ids.reserve(by_prompt_.size());
  for (const auto& [id, _] : by_prompt_) ids.push_back(id);
  return ids;
}

bool RecordIndex::complete_for(const std::string& prompt_id,
                               const std::vector<PatentRecord>& corpus) const {
  for (const auto& patent : corpus) {
    if (!has(prompt_id, patent.id)) return false;
  }
  return true;
}

}  // namespace ideaforge
