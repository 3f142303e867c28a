#include "ideaforge/elo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ideaforge/errors.hpp"
#include "ideaforge/rng.hpp"
#include "parallel_util.hpp"

namespace ideaforge {

double expected_score(double r_a, double r_b) {
  return 1.0 / (1.0 + std::pow(10.0, (r_b - r_a) / 400.0));
}

RatingTable::RatingTable(double initial_rating, double k_factor)
    : initial_rating_(initial_rating), k_factor_(k_factor) {}

void RatingTable::register_prompt(const std::string& prompt_id) {
  std::array<double, kCriterionCount> fresh{};
  fresh.fill(initial_rating_);
  ratings_.emplace(prompt_id, fresh);
  match_count_.emplace(prompt_id, 0);
}

bool RatingTable::contains(const std::string& prompt_id) const {
  return ratings_.count(prompt_id) > 0;
}

double RatingTable::rating(const std::string& prompt_id, Criterion criterion) const {
  return ratings(prompt_id)[criterion_index(criterion)];
}

const std::array<double, kCriterionCount>& RatingTable::ratings(
    const std::string& prompt_id) const {
  auto it = ratings_.find(prompt_id);
  if (it == ratings_.end()) throw Error(ErrorCode::UnknownPrompt, prompt_id);
  return it->second;
}

int RatingTable::match_count(const std::string& prompt_id) const {
  auto it = match_count_.find(prompt_id);
  if (it == match_count_.end()) throw Error(ErrorCode::UnknownPrompt, prompt_id);
  return it->second;
}

void RatingTable::apply_match(const PairwiseVerdict& verdict) {
  auto a = ratings_.find(verdict.logical_a());
  if (a == ratings_.end()) throw Error(ErrorCode::UnknownPrompt, verdict.logical_a());
  auto b = ratings_.find(verdict.logical_b());
  if (b == ratings_.end()) throw Error(ErrorCode::UnknownPrompt, verdict.logical_b());

  for (const auto criterion : kAllCriteria) {
    const auto i = criterion_index(criterion);
    const Outcome outcome = verdict.outcomes[i];
    const double score_a =
        outcome == Outcome::FirstWins ? 1.0 : (outcome == Outcome::Tie ? 0.5 : 0.0);
    const double expected_a = expected_score(a->second[i], b->second[i]);
    const double delta = k_factor_ * (score_a - expected_a);
    a->second[i] += delta;
    b->second[i] -= delta;
  }
  ++match_count_[verdict.logical_a()];
  ++match_count_[verdict.logical_b()];
}

std::vector<std::string> RatingTable::prompt_ids() const {
  std::vector<std::string> ids;
  ids.reserve(ratings_.size());
  for (const auto& [id, _] : ratings_) ids.push_back(id);
  return ids;
}

void RatingTable::set_rating(const std::string& prompt_id, Criterion criterion,
                             double value) {
  if (!contains(prompt_id)) register_prompt(prompt_id);
  ratings_[prompt_id][criterion_index(criterion)] = value;
}

nlohmann::ordered_json RatingTable::to_json() const {
  nlohmann::ordered_json j;
  j["initial_rating"] = initial_rating_;
  j["k_factor"] = k_factor_;
  nlohmann::ordered_json candidates = nlohmann::ordered_json::object();
  for (const auto& [id, ratings] : ratings_) {
    nlohmann::ordered_json per_criterion;
    for (const auto criterion : kAllCriteria) {
      per_criterion[std::string(criterion_key(criterion))] =
          ratings[criterion_index(criterion)];
    }
    candidates[id] = {{"ratings", per_criterion},
                      {"matches", match_count_.at(id)}};
  }
  j["candidates"] = std::move(candidates);
  return j;
}

RatingTable RatingTable::from_json(const nlohmann::json& j) {
  RatingTable table(j.value("initial_rating", 1000.0), j.value("k_factor", 32.0));
  if (!j.contains("candidates")) return table;
  for (const auto& [id, entry] : j.at("candidates").items()) {
    table.register_prompt(id);
    for (const auto criterion : kAllCriteria) {
      table.ratings_[id][criterion_index(criterion)] =
          entry.at("ratings").at(std::string(criterion_key(criterion))).get<double>();
    }
    table.match_count_[id] = entry.value("matches", 0);
  }
  return table;
}

std::vector<ScheduledMatch> schedule_round_robin(std::vector<std::string> prompt_ids,
                                                 const std::vector<PatentRecord>& corpus) {
  std::sort(prompt_ids.begin(), prompt_ids.end());
  prompt_ids.erase(std::unique(prompt_ids.begin(), prompt_ids.end()), prompt_ids.end());
  if (prompt_ids.size() < 2) {
    throw Error(ErrorCode::TooFewPrompts,
                "round robin needs at least 2 prompts, got " +
                    std::to_string(prompt_ids.size()));
  }
  std::vector<ScheduledMatch> schedule;
  schedule.reserve(corpus.size() * prompt_ids.size() * (prompt_ids.size() - 1) / 2);
  for (const auto& patent : corpus) {
    for (std::size_t i = 0; i < prompt_ids.size(); ++i) {
      for (std::size_t k = i + 1; k < prompt_ids.size(); ++k) {
        schedule.push_back({patent.id, prompt_ids[i], prompt_ids[k]});
      }
    }
  }
  return schedule;
}

std::vector<MatchResult> run_matches(const std::vector<ScheduledMatch>& schedule,
                                     const MatchJudge& judge_match, RatingTable& table,
                                     const TournamentOptions& options) {
  struct Slot {
    std::optional<PairwiseVerdict> verdict;
    std::optional<Error> error;
  };
  std::vector<Slot> slots(schedule.size());

  detail::parallel_for(schedule.size(), options.parallelism, [&](std::size_t i) {
    try {
      slots[i].verdict = judge_match(schedule[i]);
    } catch (const Error& e) {
      slots[i].error = Error(e.code(), "match " + std::to_string(i) + " (" +
                                           schedule[i].patent_id + ", " +
                                           schedule[i].a_id + " vs " +
                                           schedule[i].b_id + "): " + e.what());
    }
  });

  // Ratings fold strictly in schedule order; Elo is path-dependent.
  std::vector<MatchResult> results;
  results.reserve(schedule.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].error) throw *slots[i].error;
    table.apply_match(*slots[i].verdict);
    results.push_back({std::move(*slots[i].verdict), i});
  }
  return results;
}

std::vector<MatchResult> run_tournament(const TournamentContext& context,
                                       const std::vector<std::string>& prompt_ids,
                                       const std::vector<PatentRecord>& corpus,
                                       RatingTable& table) {
  if (context.records == nullptr) {
    throw Error(ErrorCode::Precondition, "tournament context has no record index");
  }
  for (const auto& id : prompt_ids) {
    if (!context.records->complete_for(id, corpus)) {
      throw Error(ErrorCode::MissingRecords,
                  id + " lacks generation records for the full corpus");
    }
    if (!table.contains(id)) table.register_prompt(id);
  }

  std::map<std::string, const PatentRecord*> patents;
  for (const auto& patent : corpus) patents.emplace(patent.id, &patent);

  const auto schedule = schedule_round_robin(prompt_ids, corpus);
  const auto judge_match = [&](const ScheduledMatch& match) {
    SplitMix64 rng(derive_seed(context.seed, {match.patent_id, match.a_id, match.b_id}));
    return judge_pair(context.judge, *patents.at(match.patent_id),
                      context.records->get(match.a_id, match.patent_id),
                      context.records->get(match.b_id, match.patent_id), rng,
                      context.limits, context.judge_options);
  };
  return run_matches(schedule, judge_match, table, {context.parallelism});
}

std::vector<RankedRow> rank(const RatingTable& table) {
  std::vector<RankedRow> rows;
  for (const auto& id : table.prompt_ids()) {
    RankedRow row;
    row.prompt_id = id;
    row.ratings = table.ratings(id);
    double sum = 0.0;
    for (const double r : row.ratings) sum += r;
    row.mean_rating = sum / static_cast<double>(kCriterionCount);
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const RankedRow& a, const RankedRow& b) {
    if (a.mean_rating != b.mean_rating) return a.mean_rating > b.mean_rating;
    return a.prompt_id < b.prompt_id;
  });
  return rows;
}

namespace {

const char* criterion_short_label(Criterion c) {
  switch (c) {
    case Criterion::TechnicalValidity: return "tech_valid";
    case Criterion::Innovativeness: return "innov";
    case Criterion::Specificity: return "spec";
    case Criterion::NeedValidity: return "need_valid";
    case Criterion::MarketSize: return "market";
    case Criterion::CompetitiveAdvantage: return "comp_adv";
  }
  return "?";
}

}  // namespace

std::string format_leaderboard(const std::vector<RankedRow>& rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%4s  %-24s %9s", "rank", "prompt", "mean");
  out << line;
  for (const auto criterion : kAllCriteria) {
    std::snprintf(line, sizeof(line), " %10s", criterion_short_label(criterion));
    out << line;
  }
  out << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    std::snprintf(line, sizeof(line), "%4zu  %-24s %9.2f", i + 1, row.prompt_id.c_str(),
                  row.mean_rating);
    out << line;
    for (const auto criterion : kAllCriteria) {
      std::snprintf(line, sizeof(line), " %10.1f", row.ratings[criterion_index(criterion)]);
      out << line;
    }
    out << "\n";
  }
  return out.str();
}

nlohmann::ordered_json leaderboard_to_json(const std::vector<RankedRow>& rows) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json entry;
    entry["prompt_id"] = row.prompt_id;
    entry["mean_rating"] = row.mean_rating;
    for (const auto criterion : kAllCriteria) {
      entry[std::string(criterion_key(criterion))] = row.ratings[criterion_index(criterion)];
    }
    j.push_back(std::move(entry));
  }
  return j;
}

}  // namespace ideaforge
