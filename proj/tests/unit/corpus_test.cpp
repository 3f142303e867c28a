#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "ideaforge/corpus.hpp"
#include "ideaforge/errors.hpp"

using namespace ideaforge;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  const auto dir = fs::temp_directory_path() / ("ideaforge_corpus_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("parse_patent maps recognized fields and keeps extras") {
  const auto record = parse_patent(
      R"({"publication_number":"X1","title":"t","abstract":"a","claims":"c",)"
      R"("description":"d","figures":["f1.png"]})",
      Domain::NLP);
  CHECK(record.id == "X1");
  CHECK(record.title == "t");
  CHECK(record.abstract == "a");
  CHECK(record.claims == "c");
  CHECK(record.description == "d");
  REQUIRE(record.extra.contains("figures"));
  CHECK(record.extra["figures"][0] == "f1.png");
}

TEST_CASE("parse_patent errors") {
  CHECK_THROWS_WITH_AS(parse_patent("not json", Domain::CS), doctest::Contains("JSON"),
                       Error);
  try {
    parse_patent(R"({"title":"t"})", Domain::NLP);
    FAIL("expected MissingField");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingField);
    CHECK(std::string(e.what()).find("publication_number") != std::string::npos);
  }
  try {
    parse_patent(R"({"publication_number":"X","title":"t"})", Domain::NLP);
    FAIL("expected MissingField for abstract");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingField);
  }
  // Empty required field is treated as missing.
  CHECK_THROWS_AS(
      parse_patent(R"({"publication_number":"","title":"t","abstract":"a"})",
                   Domain::NLP),
      Error);
}

TEST_CASE("parse_patent accepts alias field names") {
  const auto record =
      parse_patent(R"({"id":"X9","invention_title":"t","abstract":"a"})", Domain::MC);
  CHECK(record.id == "X9");
  CHECK(record.title == "t");
  CHECK(record.domain == Domain::MC);
}

TEST_CASE("patent round trip is identity on recognized fields") {
  const std::string raw =
      R"({"publication_number":"P7","title":"T","abstract":"A","claims":"C",)"
      R"("description":"D","extra_field":42})";
  const auto first = parse_patent(raw, Domain::CS);
  const auto second = parse_patent(patent_to_json(first).dump(), Domain::CS);
  CHECK(second.id == first.id);
  CHECK(second.title == first.title);
  CHECK(second.abstract == first.abstract);
  CHECK(second.claims == first.claims);
  CHECK(second.description == first.description);
  CHECK(second.extra == first.extra);
}

TEST_CASE("domain_from_string") {
  CHECK(domain_from_string("NLP") == Domain::NLP);
  CHECK(domain_from_string("cs") == Domain::CS);
  CHECK(domain_from_string("Mc") == Domain::MC);
  CHECK_THROWS_AS(domain_from_string("BIO"), Error);
}

TEST_CASE("load_corpus sorts by id and reports warnings") {
  const auto root = temp_dir("load");
  // Written out of id order on purpose.
  write_file(root / "NLP" / "b.json",
             R"({"publication_number":"B2","title":"t","abstract":"a","claims":"c","description":"d"})");
  write_file(root / "NLP" / "a.json",
             R"({"publication_number":"A1","title":"t","abstract":"a","claims":"","description":"d"})");
  write_file(root / "NLP" / "ignored.txt", "not a patent");

  std::vector<std::string> warnings;
  const auto records = load_corpus(root, Domain::NLP, &warnings);
  REQUIRE(records.size() == 2);
  CHECK(records[0].id == "A1");
  CHECK(records[1].id == "B2");
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("claims empty") != std::string::npos);
  fs::remove_all(root);
}

TEST_CASE("load_corpus rejects duplicates and empty directories") {
  const auto root = temp_dir("dup");
  write_file(root / "NLP" / "x.json",
             R"({"publication_number":"X1","title":"t","abstract":"a"})");
  write_file(root / "NLP" / "y.json",
             R"({"publication_number":"X1","title":"t","abstract":"a"})");
  try {
    load_corpus(root, Domain::NLP);
    FAIL("expected DuplicateId");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateId);
    CHECK(std::string(e.what()).find("X1") != std::string::npos);
  }

  const auto empty_root = temp_dir("empty");
  fs::create_directories(empty_root / "NLP");
  CHECK_THROWS_AS(load_corpus(empty_root, Domain::NLP), Error);
  CHECK_THROWS_AS(load_corpus(empty_root / "missing", Domain::NLP), Error);
  fs::remove_all(root);
  fs::remove_all(empty_root);
}
