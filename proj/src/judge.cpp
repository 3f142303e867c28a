#include "ideaforge/judge.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "ideaforge/errors.hpp"
#include "ideaforge/text.hpp"

namespace ideaforge {

namespace {

// Lowercase with every non-alphanumeric character removed, so that
// "Technical Validity", "technical-validity" and "technical_validity" agree.
std::string normalize_key(std::string_view key) {
  std::string out;
  out.reserve(key.size());
  for (const char c : key) {
    if (std::isalnum(static_cast<unsigned char>(c)) != 0) {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

std::optional<Outcome> outcome_from_value(const nlohmann::json& value) {
  if (value.is_number_integer()) {
    const auto n = value.get<long>();
    if (n == 1) return Outcome::FirstWins;
    if (n == 2) return Outcome::SecondWins;
    return std::nullopt;
  }
  if (!value.is_string()) return std::nullopt;
  const std::string v = normalize_key(value.get<std::string>());
  if (v == "1" || v == "a" || v == "first" || v == "idea1") return Outcome::FirstWins;
  if (v == "2" || v == "b" || v == "second" || v == "idea2") return Outcome::SecondWins;
  if (v == "tie" || v == "draw" || v == "equal") return Outcome::Tie;
  return std::nullopt;
}

}  // namespace

std::string_view criterion_key(Criterion c) {
  switch (c) {
    case Criterion::TechnicalValidity: return "technical_validity";
    case Criterion::Innovativeness: return "innovativeness";
    case Criterion::Specificity: return "specificity";
    case Criterion::NeedValidity: return "need_validity";
    case Criterion::MarketSize: return "market_size";
    case Criterion::CompetitiveAdvantage: return "competitive_advantage";
  }
  return "technical_validity";
}

std::optional<Criterion> criterion_from_key(std::string_view key) {
  const std::string n = normalize_key(key);
  if (n == "technicalvalidity" || n == "techvalid" || n == "technicalvalidityfeasibility") {
    return Criterion::TechnicalValidity;
  }
  if (n == "innovativeness" || n == "innov" || n == "innovation") {
    return Criterion::Innovativeness;
  }
  if (n == "specificity" || n == "spec") return Criterion::Specificity;
  if (n == "needvalidity" || n == "needvalid") return Criterion::NeedValidity;
  if (n == "marketsize" || n == "marketpotential") return Criterion::MarketSize;
  if (n == "competitiveadvantage" || n == "compadv") {
    return Criterion::CompetitiveAdvantage;
  }
  return std::nullopt;
}

Outcome invert(Outcome o) {
  switch (o) {
    case Outcome::FirstWins: return Outcome::SecondWins;
    case Outcome::SecondWins: return Outcome::FirstWins;
    case Outcome::Tie: return Outcome::Tie;
  }
  return Outcome::Tie;
}

nlohmann::ordered_json verdict_to_json(const PairwiseVerdict& verdict) {
  nlohmann::ordered_json j;
  j["patent_id"] = verdict.patent_id;
  j["first_shown"] = verdict.first_shown;
  j["second_shown"] = verdict.second_shown;
  j["swapped"] = verdict.swapped;
  nlohmann::ordered_json outcomes;
  for (const auto criterion : kAllCriteria) {
    const auto o = verdict.outcomes[criterion_index(criterion)];
    outcomes[std::string(criterion_key(criterion))] =
        o == Outcome::FirstWins ? "a" : (o == Outcome::SecondWins ? "b" : "tie");
  }
  j["outcomes"] = std::move(outcomes);
  j["judge_raw"] = verdict.judge_raw;
  return j;
}

PairwiseVerdict verdict_from_json(const nlohmann::json& j) {
  PairwiseVerdict verdict;
  verdict.patent_id = j.at("patent_id").get<std::string>();
  verdict.first_shown = j.at("first_shown").get<std::string>();
  verdict.second_shown = j.at("second_shown").get<std::string>();
  verdict.swapped = j.at("swapped").get<bool>();
  const auto& outcomes = j.at("outcomes");
  for (const auto criterion : kAllCriteria) {
    const auto value = outcomes.at(std::string(criterion_key(criterion))).get<std::string>();
    verdict.outcomes[criterion_index(criterion)] =
        value == "a" ? Outcome::FirstWins
                     : (value == "b" ? Outcome::SecondWins : Outcome::Tie);
  }
  verdict.judge_raw = j.value("judge_raw", "");
  return verdict;
}

const std::string kJudgeSystemPrompt =
    "You are a rigorous evaluator of product ideas derived from patents. "
    "You compare two candidate ideas for the same patent and pick a winner "
    "per criterion. Judge only the content shown; ignore presentation order. "
    "Answer with JSON only.";

std::string patent_context(const PatentRecord& patent, int claims_context_chars) {
  std::ostringstream out;
  out << "Patent " << patent.id << ": " << patent.title << "\n";
  out << "Abstract: " << patent.abstract << "\n";
  if (!patent.claims.empty()) {
    out << "Claims (excerpt): "
        << text::utf8_prefix(patent.claims,
                             static_cast<std::size_t>(claims_context_chars));
    out << "\n";
  }
  return out.str();
}

std::string build_judge_prompt(const PatentRecord& patent, const ProductIdea& first,
                               const ProductIdea& second, const JudgeOptions& options) {
  std::ostringstream out;
  out << "Two product ideas were derived from the same patent. Compare them.\n\n";
  out << patent_context(patent, options.claims_context_chars) << "\n";
  out << "Idea 1:\n" << serialize_idea(first) << "\n\n";
  out << "Idea 2:\n" << serialize_idea(second) << "\n\n";
  out << "Criteria:\n";
  out << "- technical_validity: the idea is technically sound and launchable within "
         "about three years on the patented mechanism.\n";
  out << "- innovativeness: the idea unlocks a new or clearly superior solution.\n";
  out << "- specificity: target users, pain point, and use case are precise.\n";
  out << "- need_validity: the addressed need is real and compelling.\n";
  out << "- market_size: the target market is sizable or high-value.\n";
  out << "- competitive_advantage: the patent grants a durable, hard-to-copy edge.\n\n";
  out << "For every criterion above decide which idea is stronger. Respond with only "
         "a JSON object mapping each criterion key to \"1\" (Idea 1), \"2\" (Idea 2), "
         "or \"tie\".";
  return out.str();
}

VerdictMap parse_verdict(std::string_view raw, bool swapped) {
  const auto object = text::extract_json_object(raw);
  if (!object) {
    throw Error(ErrorCode::JudgeUnparseable, "no JSON object in judge reply");
  }

  std::array<std::optional<Outcome>, kCriterionCount> found;
  for (const auto& [key, value] : object->items()) {
    const auto criterion = criterion_from_key(key);
    if (!criterion) continue;
    const auto outcome = outcome_from_value(value);
    if (!outcome) {
      throw Error(ErrorCode::JudgeUnparseable,
                  "unrecognized outcome for " + key + ": " + value.dump());
    }
    found[criterion_index(*criterion)] = outcome;
  }

  VerdictMap verdict{};
  for (const auto criterion : kAllCriteria) {
    const auto& slot = found[criterion_index(criterion)];
    if (!slot) {
      throw Error(ErrorCode::MissingCriterion, std::string(criterion_key(criterion)));
    }
    verdict[criterion_index(criterion)] = swapped ? invert(*slot) : *slot;
  }
  return verdict;
}

PairwiseVerdict judge_pair_forced(const Role& judge, const PatentRecord& patent,
                                  const GenerationRecord& a, const GenerationRecord& b,
                                  bool swapped, const FieldLimits& limits,
                                  const JudgeOptions& options) {
  if (a.patent_id != patent.id || b.patent_id != patent.id) {
    throw Error(ErrorCode::MismatchedPatent,
                "records for " + a.patent_id + "/" + b.patent_id +
                    " judged against patent " + patent.id);
  }
  // Ideas must already be truncated when they reach the judge.
  if (!within_limits(a.idea, limits) || !within_limits(b.idea, limits)) {
    throw Error(ErrorCode::Precondition, "ideas must satisfy limits before judging");
  }

  const GenerationRecord& shown_first = swapped ? b : a;
  const GenerationRecord& shown_second = swapped ? a : b;
  const std::string prompt =
      build_judge_prompt(patent, shown_first.idea, shown_second.idea, options);

  std::string last_error;
  for (int attempt = 1; attempt <= options.max_attempts; ++attempt) {
    ChatResponse response = judge.complete(kJudgeSystemPrompt, prompt);
    try {
      PairwiseVerdict verdict;
      verdict.patent_id = patent.id;
      verdict.first_shown = shown_first.prompt_id;
      verdict.second_shown = shown_second.prompt_id;
      verdict.swapped = swapped;
      verdict.outcomes = parse_verdict(response.text, swapped);
      verdict.judge_raw = response.text;
      return verdict;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::JudgeUnparseable &&
          e.code() != ErrorCode::MissingCriterion) {
        throw;
      }
      last_error = e.what();
    }
  }
  throw Error(ErrorCode::JudgeUnparseable,
              "patent " + patent.id + ": " + std::to_string(options.max_attempts) +
                  " attempts unparseable (" + last_error + ")");
}

PairwiseVerdict judge_pair(const Role& judge, const PatentRecord& patent,
                           const GenerationRecord& a, const GenerationRecord& b,
                           SplitMix64& rng, const FieldLimits& limits,
                           const JudgeOptions& options) {
  return judge_pair_forced(judge, patent, a, b, rng.next_bool(), limits, options);
}

}  // namespace ideaforge
