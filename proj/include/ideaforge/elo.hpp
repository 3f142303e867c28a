#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ideaforge/corpus.hpp"
#include "ideaforge/generate.hpp"
#include "ideaforge/judge.hpp"

namespace ideaforge {

/// Standard Elo logistic expectation: 1 / (1 + 10^((r_b - r_a) / 400)).
double expected_score(double r_a, double r_b);

/// Per-candidate, per-criterion Elo state. Updates are zero-sum by
/// construction: one delta is computed per criterion and applied with
/// opposite signs, so per-criterion rating sums are bit-stable.
class RatingTable {
 public:
  explicit RatingTable(double initial_rating = 1000.0, double k_factor = 32.0);

  void register_prompt(const std::string& prompt_id);
  bool contains(const std::string& prompt_id) const;

  double rating(const std::string& prompt_id, Criterion criterion) const;
  const std::array<double, kCriterionCount>& ratings(const std::string& prompt_id) const;
  int match_count(const std::string& prompt_id) const;

  /// Applies one verdict: for each criterion independently,
  /// r_a += K * (S_a - E_a) and r_b takes the opposite delta.
  /// Throws UnknownPrompt when either side is not registered.
  void apply_match(const PairwiseVerdict& verdict);

  std::vector<std::string> prompt_ids() const;
  double initial_rating() const { return initial_rating_; }
  double k_factor() const { return k_factor_; }

  /// Test/snapshot support; registers the prompt when absent.
  void set_rating(const std::string& prompt_id, Criterion criterion, double value);

  nlohmann::ordered_json to_json() const;
  static RatingTable from_json(const nlohmann::json& j);

 private:
  double initial_rating_;
  double k_factor_;
  std::map<std::string, std::array<double, kCriterionCount>> ratings_;
  std::map<std::string, int> match_count_;
};

struct ScheduledMatch {
  std::string patent_id;
  std::string a_id;
  std::string b_id;
};

/// Every unordered prompt pair once per patent: patents in canonical order,
/// pairs in lexicographic id order. |matches| = |corpus| * n(n-1)/2.
/// Throws TooFewPrompts for n < 2.
std::vector<ScheduledMatch> schedule_round_robin(std::vector<std::string> prompt_ids,
                                                 const std::vector<PatentRecord>& corpus);

struct MatchResult {
  PairwiseVerdict verdict;
  std::size_t applied_order_index = 0;
};

using MatchJudge = std::function<PairwiseVerdict(const ScheduledMatch&)>;

struct TournamentOptions {
  int parallelism = 1;
};

/// Judges every scheduled match (concurrently when configured), then applies
/// the verdicts to `table` strictly in schedule order. Judge errors carry the
/// failing match in their message.
std::vector<MatchResult> run_matches(const std::vector<ScheduledMatch>& schedule,
                                     const MatchJudge& judge_match, RatingTable& table,
                                     const TournamentOptions& options = {});

struct TournamentContext {
  Role judge;
  const RecordIndex* records = nullptr;
  FieldLimits limits;
  JudgeOptions judge_options;
  std::uint64_t seed = 0;
  int parallelism = 1;
};

/// Full tournament over the given prompts and corpus. Each match draws its
/// swap from a generator seeded by (seed, patent, a, b), so results do not
/// depend on execution order.
std::vector<MatchResult> run_tournament(const TournamentContext& context,
                                        const std::vector<std::string>& prompt_ids,
                                        const std::vector<PatentRecord>& corpus,
                                        RatingTable& table);

struct RankedRow {
  std::string prompt_id;
  double mean_rating = 0.0;
  std::array<double, kCriterionCount> ratings{};
};

/// Candidates by mean rating over the six criteria, descending; ties broken
/// by prompt id ascending.
std::vector<RankedRow> rank(const RatingTable& table);

/// Plain-text leaderboard. Means are rendered with two decimals.
std::string format_leaderboard(const std::vector<RankedRow>& rows);

nlohmann::ordered_json leaderboard_to_json(const std::vector<RankedRow>& rows);

}  // namespace ideaforge
