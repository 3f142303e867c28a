#include <doctest.h>

#include <cmath>
#include <map>

#include "ideaforge/elo.hpp"
#include "ideaforge/errors.hpp"
#include "ideaforge/rng.hpp"
#include "support.hpp"

using namespace ideaforge;
using namespace testsupport;

namespace {

// Independent high-precision evaluation of the Elo expectation.
long double expected_score_oracle(long double r_a, long double r_b) {
  return 1.0L / (1.0L + powl(10.0L, (r_b - r_a) / 400.0L));
}

PairwiseVerdict logical_verdict(const std::string& a, const std::string& b,
                                const std::string& patent,
                                const std::array<Outcome, kCriterionCount>& outcomes) {
  PairwiseVerdict verdict;
  verdict.patent_id = patent;
  verdict.first_shown = a;
  verdict.second_shown = b;
  verdict.swapped = false;
  verdict.outcomes = outcomes;
  return verdict;
}

// Straight-line replay of the rating update, independent of RatingTable.
struct ReplayOracle {
  std::map<std::string, std::array<double, kCriterionCount>> ratings;
  double k;

  ReplayOracle(const std::vector<std::string>& ids, double initial, double k_factor)
      : k(k_factor) {
    for (const auto& id : ids) {
      ratings[id].fill(initial);
    }
  }

  void apply(const PairwiseVerdict& verdict) {
    auto& ra = ratings.at(verdict.logical_a());
    auto& rb = ratings.at(verdict.logical_b());
    for (std::size_t i = 0; i < kCriterionCount; ++i) {
      double s = 0.5;
      if (verdict.outcomes[i] == Outcome::FirstWins) s = 1.0;
      if (verdict.outcomes[i] == Outcome::SecondWins) s = 0.0;
      const double e = 1.0 / (1.0 + std::pow(10.0, (rb[i] - ra[i]) / 400.0));
      const double delta = k * (s - e);
      ra[i] += delta;
      rb[i] -= delta;
    }
  }
};

}  // namespace

TEST_CASE("expected_score closed form") {
  CHECK(expected_score(1000, 1000) == doctest::Approx(0.5).epsilon(1e-15));
  // Frozen value cross-checked against the long-double oracle.
  CHECK(std::abs(expected_score(1200, 1000) - 0.759746927) < 1e-6);
  CHECK(std::abs(static_cast<long double>(expected_score(1200, 1000)) -
                 expected_score_oracle(1200.0L, 1000.0L)) < 1e-12L);

  SplitMix64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double a = 400.0 + rng.next_unit() * 1600.0;
    const double b = 400.0 + rng.next_unit() * 1600.0;
    CHECK(std::abs(expected_score(a, b) + expected_score(b, a) - 1.0) < 1e-12);
  }
}

TEST_CASE("apply_match hand arithmetic") {
  RatingTable table(1000.0, 32.0);
  table.register_prompt("a");
  table.register_prompt("b");

  std::array<Outcome, kCriterionCount> outcomes;
  outcomes.fill(Outcome::Tie);
  outcomes[criterion_index(Criterion::TechnicalValidity)] = Outcome::FirstWins;
  table.apply_match(logical_verdict("a", "b", "P1", outcomes));

  // 1000 + 32 * (1 - 0.5) = 1016 / 984 on the won criterion.
  CHECK(table.rating("a", Criterion::TechnicalValidity) == doctest::Approx(1016.0));
  CHECK(table.rating("b", Criterion::TechnicalValidity) == doctest::Approx(984.0));
  // Ties at equal ratings leave both sides unchanged.
  CHECK(table.rating("a", Criterion::MarketSize) == doctest::Approx(1000.0));
  CHECK(table.rating("b", Criterion::MarketSize) == doctest::Approx(1000.0));
  CHECK(table.match_count("a") == 1);
  CHECK(table.match_count("b") == 1);
}

TEST_CASE("a sweep of all six criteria moves every rating in the right direction") {
  RatingTable table;
  table.register_prompt("a");
  table.register_prompt("b");
  std::array<Outcome, kCriterionCount> outcomes;
  outcomes.fill(Outcome::FirstWins);
  table.apply_match(logical_verdict("a", "b", "P1", outcomes));
  for (const auto criterion : kAllCriteria) {
    CHECK(table.rating("a", criterion) > 1000.0);
    CHECK(table.rating("b", criterion) < 1000.0);
  }
}

TEST_CASE("monotonicity: wins never lower the winner, losses never raise the loser") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    RatingTable table(1000.0, 32.0);
    const double ra = 600.0 + rng.next_unit() * 1200.0;
    const double rb = 600.0 + rng.next_unit() * 1200.0;
    for (const auto criterion : kAllCriteria) {
      table.set_rating("a", criterion, ra);
      table.set_rating("b", criterion, rb);
    }
    std::array<Outcome, kCriterionCount> outcomes;
    for (auto& o : outcomes) o = rng.next_bool() ? Outcome::FirstWins : Outcome::SecondWins;
    table.apply_match(logical_verdict("a", "b", "P", outcomes));
    for (const auto criterion : kAllCriteria) {
      const bool a_won = outcomes[criterion_index(criterion)] == Outcome::FirstWins;
      const double winner = table.rating(a_won ? "a" : "b", criterion);
      const double loser = table.rating(a_won ? "b" : "a", criterion);
      CHECK(winner >= (a_won ? ra : rb));
      CHECK(loser <= (a_won ? rb : ra));
    }
  }
}

TEST_CASE("apply_match rejects unregistered prompts") {
  RatingTable table;
  table.register_prompt("a");
  std::array<Outcome, kCriterionCount> outcomes;
  outcomes.fill(Outcome::Tie);
  try {
    table.apply_match(logical_verdict("a", "ghost", "P1", outcomes));
    FAIL("expected UnknownPrompt");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownPrompt);
  }
}

TEST_CASE("zero-sum and replay oracle over random match sequences") {
  const std::vector<std::string> ids = {"a", "b", "c", "d"};
  SplitMix64 rng(99);

  for (int sequence = 0; sequence < 100; ++sequence) {
    RatingTable table(1000.0, 32.0);
    for (const auto& id : ids) table.register_prompt(id);
    ReplayOracle oracle(ids, 1000.0, 32.0);

    const int matches = 30;
    for (int m = 0; m < matches; ++m) {
      const auto i = rng.next_below(ids.size());
      auto k = rng.next_below(ids.size() - 1);
      if (k >= i) ++k;
      std::array<Outcome, kCriterionCount> outcomes;
      for (auto& o : outcomes) {
        const auto draw = rng.next_below(3);
        o = draw == 0 ? Outcome::FirstWins
                      : (draw == 1 ? Outcome::SecondWins : Outcome::Tie);
      }
      const auto verdict = logical_verdict(ids[i], ids[k], "P", outcomes);
      table.apply_match(verdict);
      oracle.apply(verdict);

      for (const auto criterion : kAllCriteria) {
        double sum = 0.0;
        for (const auto& id : ids) sum += table.rating(id, criterion);
        CHECK(std::abs(sum - 4000.0) < 1e-9);
      }
    }

    for (const auto& id : ids) {
      for (const auto criterion : kAllCriteria) {
        CHECK(table.rating(id, criterion) ==
              oracle.ratings.at(id)[criterion_index(criterion)]);
      }
    }
  }
}

TEST_CASE("schedule_round_robin matches the enumeration oracle") {
  const std::vector<PatentRecord> corpus = {make_patent("P1"), make_patent("P2")};
  const auto schedule = schedule_round_robin({"c", "a", "b"}, corpus);
  // Oracle: every (patent, unordered pair) combination exactly once.
  REQUIRE(schedule.size() == 6);  // 2 patents * 3 pairs
  std::size_t index = 0;
  for (const auto* patent : {"P1", "P2"}) {
    for (const auto& [x, y] : std::vector<std::pair<std::string, std::string>>{
             {"a", "b"}, {"a", "c"}, {"b", "c"}}) {
      CHECK(schedule[index].patent_id == patent);
      CHECK(schedule[index].a_id == x);
      CHECK(schedule[index].b_id == y);
      ++index;
    }
  }

  SUBCASE("count formula across sizes") {
    for (const std::size_t n : {2u, 3u, 5u}) {
      for (const std::size_t p : {1u, 2u, 10u}) {
        std::vector<std::string> prompts;
        for (std::size_t i = 0; i < n; ++i) prompts.push_back("q" + std::to_string(i));
        std::vector<PatentRecord> patents;
        for (std::size_t i = 0; i < p; ++i) {
          patents.push_back(make_patent("R" + std::to_string(i)));
        }
        CHECK(schedule_round_robin(prompts, patents).size() == p * n * (n - 1) / 2);
      }
    }
  }
  SUBCASE("degenerate input") {
    try {
      schedule_round_robin({"only"}, corpus);
      FAIL("expected TooFewPrompts");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TooFewPrompts);
    }
  }
  SUBCASE("two prompts, one patent -> one match") {
    CHECK(schedule_round_robin({"a", "b"}, {make_patent("P1")}).size() == 1);
  }
}

TEST_CASE("run_tournament: determinism, dominance, and log replay") {
  std::vector<PatentRecord> corpus;
  for (int i = 1; i <= 3; ++i) corpus.push_back(make_patent("P" + std::to_string(i)));

  RecordIndex records;
  for (const auto& patent : corpus) {
    records.add(make_record("a", patent.id, make_idea("alpha " + patent.id)));
    records.add(make_record("b", patent.id, make_idea("beta " + patent.id)));
    records.add(make_record("c", patent.id, make_idea("gamma " + patent.id)));
  }

  FnProvider judge_provider = content_keyed_judge("alpha");
  TournamentContext context;
  context.judge = role_for(judge_provider);
  context.records = &records;
  context.seed = 42;
  context.parallelism = 1;

  RatingTable first(1000.0, 32.0);
  const auto matches = run_tournament(context, {"a", "b", "c"}, corpus, first);
  CHECK(matches.size() == 9);

  SUBCASE("byte-identical repeat run") {
    RatingTable second(1000.0, 32.0);
    run_tournament(context, {"a", "b", "c"}, corpus, second);
    CHECK(first.to_json().dump() == second.to_json().dump());
  }
  SUBCASE("parallel judging gives the same table") {
    TournamentContext parallel = context;
    parallel.parallelism = 4;
    RatingTable second(1000.0, 32.0);
    run_tournament(parallel, {"a", "b", "c"}, corpus, second);
    CHECK(first.to_json().dump() == second.to_json().dump());
  }
  SUBCASE("the always-winning prompt tops every criterion") {
    for (const auto criterion : kAllCriteria) {
      CHECK(first.rating("a", criterion) > first.rating("b", criterion));
      CHECK(first.rating("a", criterion) > first.rating("c", criterion));
    }
  }
  SUBCASE("replaying the match log reproduces the table") {
    ReplayOracle oracle({"a", "b", "c"}, 1000.0, 32.0);
    for (const auto& match : matches) oracle.apply(match.verdict);
    for (const auto& id : {"a", "b", "c"}) {
      for (const auto criterion : kAllCriteria) {
        CHECK(first.rating(id, criterion) ==
              oracle.ratings.at(id)[criterion_index(criterion)]);
      }
    }
    // applied_order_index is the strict schedule order.
    for (std::size_t i = 0; i < matches.size(); ++i) {
      CHECK(matches[i].applied_order_index == i);
    }
  }
  SUBCASE("missing records are rejected up front") {
    RatingTable table;
    try {
      run_tournament(context, {"a", "b", "ghost"}, corpus, table);
      FAIL("expected MissingRecords");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MissingRecords);
    }
  }
}

TEST_CASE("rank orders by mean, breaking ties by id") {
  RatingTable table(1000.0, 32.0);
  // Published leaderboard row used as a formatting fixture:
  // technical validity 1093, specificity 1215, need validity 1076,
  // market size 1008, innovativeness 1215, competitive advantage 1150.
  table.set_rating("league-top", Criterion::TechnicalValidity, 1093);
  table.set_rating("league-top", Criterion::Specificity, 1215);
  table.set_rating("league-top", Criterion::NeedValidity, 1076);
  table.set_rating("league-top", Criterion::MarketSize, 1008);
  table.set_rating("league-top", Criterion::Innovativeness, 1215);
  table.set_rating("league-top", Criterion::CompetitiveAdvantage, 1150);
  table.register_prompt("zz");

  const auto rows = rank(table);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].prompt_id == "league-top");
  CHECK(rows[0].mean_rating == doctest::Approx(1126.1666666667).epsilon(1e-9));
  CHECK(rows[1].prompt_id == "zz");

  const std::string board = format_leaderboard(rows);
  CHECK(board.find("1126.17") != std::string::npos);

  SUBCASE("fresh table ranks by id") {
    RatingTable fresh;
    fresh.register_prompt("b");
    fresh.register_prompt("a");
    const auto tied = rank(fresh);
    CHECK(tied[0].prompt_id == "a");
    CHECK(tied[1].prompt_id == "b");
  }
  SUBCASE("single candidate") {
    RatingTable solo;
    solo.register_prompt("only");
    CHECK(rank(solo).size() == 1);
  }
}

TEST_CASE("rating table JSON round trip") {
  RatingTable table(1000.0, 24.0);
  table.register_prompt("a");
  table.register_prompt("b");
  std::array<Outcome, kCriterionCount> outcomes;
  outcomes.fill(Outcome::FirstWins);
  table.apply_match(logical_verdict("a", "b", "P1", outcomes));

  const auto back = RatingTable::from_json(table.to_json());
  CHECK(back.initial_rating() == 1000.0);
  CHECK(back.k_factor() == 24.0);
  CHECK(back.to_json().dump() == table.to_json().dump());
}
