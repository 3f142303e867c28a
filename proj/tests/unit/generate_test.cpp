#include <doctest.h>

#include <fstream>
#include <sstream>

#include "ideaforge/default_prompt.hpp"
#include "ideaforge/errors.hpp"
#include "ideaforge/generate.hpp"
#include "support.hpp"

using namespace ideaforge;
using namespace testsupport;

namespace {

std::string idea_json(const std::string& tag) {
  return serialize_idea(make_idea(tag));
}

}  // namespace

TEST_CASE("validate_template enforces the placeholder contract") {
  CHECK_NOTHROW(validate_template("a {PATENT_JSON} b {LIMITS}"));
  CHECK_NOTHROW(validate_template("{PATENT_JSON}\n{LIMITS}\n  \t"));
  const char* bad[] = {
      "no placeholders",
      "{PATENT_JSON} only",
      "{LIMITS} only",
      "{LIMITS} before {PATENT_JSON}",
      "{PATENT_JSON} {PATENT_JSON} {LIMITS}",
      "{PATENT_JSON} {LIMITS} {LIMITS}",
      "{PATENT_JSON} {LIMITS} trailing words",
  };
  for (const auto* tmpl : bad) {
    CAPTURE(tmpl);
    try {
      validate_template(tmpl);
      FAIL_CHECK("expected TemplateError for: " << tmpl);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TemplateError);
    }
  }
}

TEST_CASE("assemble_user_prompt substitutes and ends with the restatement") {
  const auto candidate = make_candidate("c1");
  const auto patent = make_patent("P42", "Widget");
  const FieldLimits limits;

  const std::string prompt = assemble_user_prompt(candidate, patent, limits);
  const std::string restatement = limits_restatement(limits);
  REQUIRE(prompt.size() >= restatement.size());
  CHECK(prompt.substr(prompt.size() - restatement.size()) == restatement);
  CHECK(prompt.find("\"publication_number\":\"P42\"") != std::string::npos);
  CHECK(prompt.rfind("Patent:\n", 0) == 0);

  SUBCASE("restatement names the default bounds") {
    CHECK(restatement.find("differentiation ≤ 300 characters.") ==
          restatement.size() - std::string("differentiation ≤ 300 characters.").size());
  }
}

TEST_CASE("assemble leaves placeholder-looking patent text alone") {
  auto candidate = make_candidate("c1");
  auto patent = make_patent("P1");
  patent.abstract = "contains {LIMITS} and {PATENT_JSON} literally";
  const FieldLimits limits;
  const std::string prompt = assemble_user_prompt(candidate, patent, limits);
  // The literal tokens inside the patent survive untouched.
  CHECK(prompt.find("contains {LIMITS} and {PATENT_JSON} literally") != std::string::npos);
  // And the real substitution still happened exactly once at the end.
  const std::string restatement = limits_restatement(limits);
  CHECK(prompt.substr(prompt.size() - restatement.size()) == restatement);
}

TEST_CASE("generate_idea happy path truncates and records excess") {
  ProductIdea big = make_idea("big");
  big.implementation = std::string(310, 'z');
  SequenceProvider provider({serialize_idea(big)});
  const auto record = generate_idea(role_for(provider), make_candidate("c1"),
                                    make_patent("P1"), FieldLimits{});
  CHECK(record.attempts == 1);
  CHECK(record.prompt_id == "c1");
  CHECK(record.patent_id == "P1");
  CHECK(record.violation.total_excess() == 10);
  CHECK(char_len(record.idea.implementation) == 300);
}

TEST_CASE("generate_idea retries on unparseable output") {
  SequenceProvider provider({"sorry, no JSON", "still prose", idea_json("ok")});
  const auto record = generate_idea(role_for(provider), make_candidate("c1"),
                                    make_patent("P1"), FieldLimits{});
  CHECK(record.attempts == 3);
  CHECK(record.idea.title == "ok title");
  CHECK(provider.calls() == 3);
}

TEST_CASE("generate_idea fails after exhausting attempts") {
  SequenceProvider provider({"prose", "prose", "prose", "prose"});
  try {
    generate_idea(role_for(provider), make_candidate("c1"), make_patent("P2"),
                  FieldLimits{});
    FAIL("expected GenerationFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GenerationFailed);
    CHECK(std::string(e.what()).find("P2") != std::string::npos);
  }
  CHECK(provider.calls() == 3);
}

TEST_CASE("generate_set: one record per patent in canonical order") {
  FnProvider provider([](const ChatRequest& request) {
    // Key the reply on the patent id inside the prompt.
    for (const char* id : {"P1", "P2", "P3"}) {
      if (request.user_prompt.find("\"publication_number\":\"" + std::string(id) + "\"") !=
          std::string::npos) {
        return idea_json(id);
      }
    }
    return std::string("unmatched");
  });
  const std::vector<PatentRecord> corpus = {make_patent("P1"), make_patent("P2"),
                                            make_patent("P3")};
  const auto batch =
      generate_set(role_for(provider), make_candidate("c1"), corpus, FieldLimits{});
  REQUIRE(batch.ok());
  REQUIRE(batch.records.size() == 3);
  CHECK(batch.records[0].patent_id == "P1");
  CHECK(batch.records[1].patent_id == "P2");
  CHECK(batch.records[2].patent_id == "P3");
  CHECK(batch.records[1].idea.title == "P2 title");
}

TEST_CASE("generate_set collects partial failures") {
  FnProvider provider([](const ChatRequest& request) {
    if (request.user_prompt.find("\"publication_number\":\"P2\"") != std::string::npos) {
      return std::string("never JSON");
    }
    return idea_json("fine");
  });
  const std::vector<PatentRecord> corpus = {make_patent("P1"), make_patent("P2"),
                                            make_patent("P3")};
  const auto batch =
      generate_set(role_for(provider), make_candidate("c1"), corpus, FieldLimits{});
  CHECK_FALSE(batch.ok());
  REQUIRE(batch.failures.size() == 1);
  CHECK(batch.failures[0].patent_id == "P2");
  REQUIRE(batch.records.size() == 2);
  CHECK(batch.records[0].patent_id == "P1");
  CHECK(batch.records[1].patent_id == "P3");
}

TEST_CASE("generate_set output is independent of parallelism") {
  FnProvider provider([](const ChatRequest& request) {
    const std::string marker = "\"publication_number\":\"";
    const auto pos = request.user_prompt.find(marker);
    const std::string id = request.user_prompt.substr(pos + marker.size(), 3);
    return idea_json(id);
  });
  std::vector<PatentRecord> corpus;
  for (int i = 0; i < 12; ++i) {
    corpus.push_back(make_patent("Q" + std::to_string(10 + i)));
  }
  const auto serial =
      generate_set(role_for(provider), make_candidate("c1"), corpus, FieldLimits{}, {3, 1});
  const auto parallel =
      generate_set(role_for(provider), make_candidate("c1"), corpus, FieldLimits{}, {3, 4});
  REQUIRE(serial.records.size() == parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    CHECK(serial.records[i].patent_id == parallel.records[i].patent_id);
    CHECK(serial.records[i].idea == parallel.records[i].idea);
  }
}

TEST_CASE("generation record JSON round trip") {
  GenerationRecord record = make_record("c1", "P1", make_idea("r"));
  record.violation.title_excess = 4;
  record.attempts = 2;
  record.raw_response = "raw text";
  const auto j = generation_record_to_json(record);
  const auto back = generation_record_from_json(j);
  CHECK(back.prompt_id == record.prompt_id);
  CHECK(back.patent_id == record.patent_id);
  CHECK(back.idea == record.idea);
  CHECK(back.violation.title_excess == 4);
  CHECK(back.violation.total_excess() == 4);
  CHECK(back.attempts == 2);
  CHECK(back.raw_response == "raw text");
}

TEST_CASE("record index lookups") {
  RecordIndex index;
  index.add(make_record("a", "P1", make_idea("a1")));
  index.add(make_record("a", "P2", make_idea("a2")));
  index.add(make_record("b", "P1", make_idea("b1")));

  CHECK(index.has("a", "P1"));
  CHECK_FALSE(index.has("b", "P2"));
  CHECK(index.get("a", "P2").idea.title == "a2 title");
  CHECK_THROWS_AS(index.get("zz", "P1"), Error);
  CHECK_THROWS_AS(index.get("b", "P2"), Error);
  CHECK(index.prompt_ids() == std::vector<std::string>{"a", "b"});

  const std::vector<PatentRecord> corpus = {make_patent("P1"), make_patent("P2")};
  CHECK(index.complete_for("a", corpus));
  CHECK_FALSE(index.complete_for("b", corpus));
}

TEST_CASE("bundled default candidate is valid and matches the shipped asset") {
  const auto& candidate = default_candidate();
  CHECK(candidate.id == "default-nlp");
  CHECK(candidate.domain == Domain::NLP);
  CHECK(candidate.parent_ids.empty());
  CHECK_NOTHROW(validate_template(candidate.user_template));
  CHECK(candidate.system_prompt.find("product-innovation analyst") != std::string::npos);

  std::ifstream in(std::string(IDEAFORGE_ASSETS_DIR) + "/prompts/default_nlp.json");
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const auto asset = candidate_from_json(nlohmann::json::parse(buffer.str()));
  CHECK(asset.id == candidate.id);
  CHECK(asset.system_prompt == candidate.system_prompt);
  CHECK(asset.user_template == candidate.user_template);
  CHECK(asset.domain == candidate.domain);
}

TEST_CASE("candidate JSON round trip and derived ids") {
  PromptCandidate candidate = make_candidate("x");
  candidate.parent_ids = {"p1", "p2"};
  candidate.notes = "n";
  const auto back = candidate_from_json(candidate_to_json(candidate));
  CHECK(back.id == candidate.id);
  CHECK(back.parent_ids == candidate.parent_ids);
  CHECK(back.system_prompt == candidate.system_prompt);
  CHECK(back.user_template == candidate.user_template);
  CHECK(back.domain == candidate.domain);

  const auto id1 = derive_candidate_id("merged", candidate);
  CHECK(id1 == derive_candidate_id("merged", candidate));
  PromptCandidate other = candidate;
  other.system_prompt += " changed";
  CHECK(id1 != derive_candidate_id("merged", other));
}
