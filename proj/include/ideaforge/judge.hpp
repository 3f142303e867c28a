#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "ideaforge/corpus.hpp"
#include "ideaforge/generate.hpp"
#include "ideaforge/provider.hpp"
#include "ideaforge/rng.hpp"

namespace ideaforge {

/// The six judged dimensions, in canonical order.
enum class Criterion {
  TechnicalValidity,
  Innovativeness,
  Specificity,
  NeedValidity,
  MarketSize,
  CompetitiveAdvantage,
};

inline constexpr std::size_t kCriterionCount = 6;
inline constexpr std::array<Criterion, kCriterionCount> kAllCriteria = {
    Criterion::TechnicalValidity, Criterion::Innovativeness,
    Criterion::Specificity,       Criterion::NeedValidity,
    Criterion::MarketSize,        Criterion::CompetitiveAdvantage,
};

std::string_view criterion_key(Criterion c);  // "technical_validity", ...
std::optional<Criterion> criterion_from_key(std::string_view key);  // alias tolerant
constexpr std::size_t criterion_index(Criterion c) { return static_cast<std::size_t>(c); }

enum class Outcome { FirstWins, SecondWins, Tie };

Outcome invert(Outcome o);

/// Per-criterion outcomes indexed by canonical criterion order.
using VerdictMap = std::array<Outcome, kCriterionCount>;

/// The result of one A-vs-B judgment. `first_shown`/`second_shown` record
/// presentation order; `outcomes` is expressed post-de-swap in terms of the
/// logical (a, b) pair, where a = swapped ? second_shown : first_shown.
struct PairwiseVerdict {
  std::string patent_id;
  std::string first_shown;
  std::string second_shown;
  bool swapped = false;
  VerdictMap outcomes{};
  std::string judge_raw;

  const std::string& logical_a() const { return swapped ? second_shown : first_shown; }
  const std::string& logical_b() const { return swapped ? first_shown : second_shown; }
};

nlohmann::ordered_json verdict_to_json(const PairwiseVerdict& verdict);
PairwiseVerdict verdict_from_json(const nlohmann::json& j);

struct JudgeOptions {
  int claims_context_chars = 2000;  // claims excerpt cap in the judge prompt
  int max_attempts = 3;             // calls per match on unparseable verdicts
};

extern const std::string kJudgeSystemPrompt;

/// Condensed patent context: title, abstract, and a capped claims excerpt.
/// Full descriptions would overflow small-judge context windows.
std::string patent_context(const PatentRecord& patent, int claims_context_chars = 2000);

/// One prompt carrying the patent context, both ideas, the six criterion
/// definitions, and the JSON answer instruction. Each criterion key appears
/// exactly once.
std::string build_judge_prompt(const PatentRecord& patent, const ProductIdea& first,
                               const ProductIdea& second,
                               const JudgeOptions& options = {});

/// Parses a judge reply into per-criterion outcomes, applying de-swap so the
/// result is expressed for the logical pair. Accepts criterion-name aliases
/// case-insensitively and the values 1/2/tie (plus A/B, first/second, draw).
/// Throws JudgeUnparseable / MissingCriterion.
VerdictMap parse_verdict(std::string_view raw, bool swapped);

/// Judges one match with the presentation order fixed by `swapped`.
PairwiseVerdict judge_pair_forced(const Role& judge, const PatentRecord& patent,
                                  const GenerationRecord& a, const GenerationRecord& b,
                                  bool swapped, const FieldLimits& limits,
                                  const JudgeOptions& options = {});

/// Judges one match, drawing the position swap from `rng` (fair coin).
PairwiseVerdict judge_pair(const Role& judge, const PatentRecord& patent,
                           const GenerationRecord& a, const GenerationRecord& b,
                           SplitMix64& rng, const FieldLimits& limits,
                           const JudgeOptions& options = {});

}  // namespace ideaforge
