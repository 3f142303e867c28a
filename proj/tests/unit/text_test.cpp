#include <doctest.h>

#include "ideaforge/rng.hpp"
#include "ideaforge/text.hpp"

using namespace ideaforge;

TEST_CASE("char_len counts scalars") {
  CHECK(text::char_len("abc") == 3);
  CHECK(text::char_len("") == 0);
  CHECK(text::char_len("é") == 1);          // 2 UTF-8 bytes
  CHECK(text::char_len("日本語") == 3);  // 3-byte scalars
  CHECK(text::char_len("\U0001F600") == 1);      // 4-byte scalar
  CHECK(text::char_len("aéb") == 3);
}

TEST_CASE("char_len is total over ill-formed input") {
  // A stray continuation byte and a truncated sequence each count as one.
  const std::string stray("\x80", 1);
  CHECK(text::char_len(stray) == 1);
  const std::string truncated("\xC3", 1);  // lead byte with no continuation
  CHECK(text::char_len(truncated) == 1);
  const std::string mixed = "a" + stray + "b";
  CHECK(text::char_len(mixed) == 3);
}

TEST_CASE("utf8_prefix cuts at scalar boundaries") {
  CHECK(text::utf8_prefix("abcdef", 3) == "abc");
  CHECK(text::utf8_prefix("abc", 10) == "abc");
  CHECK(text::utf8_prefix("", 5) == "");
  // "éé" truncated to 1 scalar keeps the whole first two-byte sequence.
  const std::string two_e = "éé";
  CHECK(text::utf8_prefix(two_e, 1) == "é");
  CHECK(text::char_len(text::utf8_prefix(two_e, 1)) == 1);
}

TEST_CASE("utf8_prefix of random strings is a byte prefix with exact length") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::string s;
    const auto scalars = rng.next_below(40);
    for (std::uint64_t i = 0; i < scalars; ++i) {
      switch (rng.next_below(4)) {
        case 0: s += static_cast<char>('a' + rng.next_below(26)); break;
        case 1: s += "é"; break;
        case 2: s += "日"; break;
        default: s += "\U0001F600"; break;
      }
    }
    const auto limit = rng.next_below(45);
    const auto prefix = text::utf8_prefix(s, limit);
    CHECK(s.rfind(std::string(prefix), 0) == 0);
    CHECK(text::char_len(prefix) == std::min<std::size_t>(limit, text::char_len(s)));
  }
}

TEST_CASE("extract_json_object finds the first object") {
  auto j = text::extract_json_object("prose {\"a\": 1} trailing");
  REQUIRE(j.has_value());
  CHECK((*j)["a"] == 1);

  SUBCASE("fenced") {
    auto fenced = text::extract_json_object("```json\n{\"a\": 2}\n```");
    REQUIRE(fenced.has_value());
    CHECK((*fenced)["a"] == 2);
  }
  SUBCASE("nested braces and strings with escapes") {
    auto nested =
        text::extract_json_object(R"(x {"a": {"b": "q\"}{"}, "c": 3} y)");
    REQUIRE(nested.has_value());
    CHECK((*nested)["c"] == 3);
  }
  SUBCASE("skips unparseable span, takes next object") {
    auto second = text::extract_json_object("{broken} then {\"ok\": true}");
    REQUIRE(second.has_value());
    CHECK((*second)["ok"] == true);
  }
  SUBCASE("none") {
    CHECK_FALSE(text::extract_json_object("no braces here").has_value());
    CHECK_FALSE(text::extract_json_object("[1, 2, 3]").has_value());
    CHECK_FALSE(text::extract_json_object("{unclosed").has_value());
  }
}

TEST_CASE("strip_code_fence") {
  CHECK(text::strip_code_fence("```json\nbody\n```") == "body");
  CHECK(text::strip_code_fence("```\nbody\n```") == "body");
  CHECK(text::strip_code_fence("  plain  ") == "plain");
  CHECK(text::strip_code_fence("``` nofence") == "``` nofence");
}

TEST_CASE("derive_seed is order-sensitive and stable") {
  const auto s1 = derive_seed(7, {"P1", "a", "b"});
  CHECK(s1 == derive_seed(7, {"P1", "a", "b"}));
  CHECK(s1 != derive_seed(7, {"P1", "b", "a"}));
  CHECK(s1 != derive_seed(8, {"P1", "a", "b"}));
}
