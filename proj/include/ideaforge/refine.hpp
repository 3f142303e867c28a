#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ideaforge/corpus.hpp"
#include "ideaforge/elo.hpp"
#include "ideaforge/generate.hpp"
#include "ideaforge/judge.hpp"
#include "ideaforge/provider.hpp"

namespace ideaforge {

/// Input to one grafting step: the champion plus the losers whose outputs the
/// refiner mines for effective fragments.
struct RefinementContext {
  PromptCandidate champion;
  std::vector<std::pair<PromptCandidate, std::vector<GenerationRecord>>> losers;
  int sample_cap = 5;  // outputs shown per loser
};

extern const std::string kRefinerSystemPrompt;

/// Grafts effective fragments from the losers into the champion's system
/// prompt. The result keeps the champion's user template; if the refiner
/// proposes a template that breaks the placeholder contract, the champion's
/// template is restored and a warning is recorded. Throws RefinerUnparseable
/// when no prompt text can be extracted.
PromptCandidate merge_prompt(const Role& refiner, const RefinementContext& context,
                             std::vector<std::string>* warnings = nullptr);

/// Rewrites the base prompt's terminology for the target domain, preserving
/// structure. Throws Precondition when base.domain == target.
PromptCandidate adapt_domain(const Role& refiner, const PromptCandidate& base,
                             Domain target);

/// Tally of a cheap-judge screen: per-criterion outcomes summed over the
/// sample, counted from the challenger's side.
struct ScreenOutcome {
  std::string challenger_id;
  std::string incumbent_id;
  long wins = 0;
  long losses = 0;
  long ties = 0;
  bool promoted = false;  // strict majority: wins > losses
};

nlohmann::ordered_json screen_outcome_to_json(const ScreenOutcome& outcome);

/// Compares challenger vs incumbent on every sample patent with the cheap
/// judge role. Both candidates need records for the full sample. Per-patent
/// judgments are independent and run on up to `parallelism` threads.
ScreenOutcome prescreen(const Role& cheap_judge, const PromptCandidate& challenger,
                        const PromptCandidate& incumbent,
                        const std::vector<PatentRecord>& sample,
                        const RecordIndex& records, std::uint64_t seed,
                        const FieldLimits& limits, const JudgeOptions& options = {},
                        int parallelism = 1);

/// In-memory candidate registry with lineage checks.
class Registry {
 public:
  void admit(PromptCandidate candidate, std::vector<GenerationRecord> records);

  bool contains(const std::string& id) const { return candidates_.count(id) > 0; }
  const PromptCandidate& candidate(const std::string& id) const;
  const std::map<std::string, PromptCandidate>& candidates() const { return candidates_; }
  std::vector<std::string> ids() const;
  const RecordIndex& records() const { return records_; }
  RecordIndex& records() { return records_; }

 private:
  std::map<std::string, PromptCandidate> candidates_;
  RecordIndex records_;
};

struct OptimizeContext {
  Role generator;
  Role judge;
  Role prescreen_judge;
  Role refiner;
  FieldLimits limits;
  JudgeOptions judge_options;
  double initial_rating = 1000.0;
  double k_factor = 32.0;
  std::uint64_t seed = 0;
  int parallelism = 1;
  int loser_sample_cap = 5;
  int generate_attempts = 3;

  // Optional sinks for persistence and progress reporting.
  std::function<void(const GenerationRecord&)> on_generation;
  std::function<void(const std::vector<MatchResult>&)> on_tournament;
  std::function<void(const std::string&)> log;
};

struct OptimizeResult {
  PromptCandidate champion;
  RatingTable table{};
  int rounds_run = 0;
  int promotions = 0;
};

/// The optimization loop: tournament -> graft -> generate -> pre-screen gate.
/// A challenger enters the rated registry only when the screen promotes it;
/// a round that fails to promote stops the loop with the incumbent retained.
/// Operational errors inside a round are logged and the loop continues.
OptimizeResult optimize_loop(const OptimizeContext& context, Registry& registry,
                             const std::vector<PatentRecord>& corpus, int rounds);

}  // namespace ideaforge
