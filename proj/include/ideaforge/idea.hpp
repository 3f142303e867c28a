#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>

namespace ideaforge {

enum class CountMode { Scalars, Bytes };

/// Per-field character budgets. "Character" means Unicode scalar value by
/// default; scalar counting is deterministic across platforms, which matters
/// because the corpus text contains non-ASCII symbols. Byte counting stays
/// available behind `count_mode` in case an external evaluator counts bytes.
struct FieldLimits {
  int title_max = 100;
  int description_max = 300;
  int implementation_max = 300;
  int differentiation_max = 300;
  CountMode count_mode = CountMode::Scalars;
};

/// The four bounded text fields of one product idea.
struct ProductIdea {
  std::string title;
  std::string product_description;
  std::string implementation;
  std::string differentiation;

  bool operator==(const ProductIdea&) const = default;
};

inline constexpr std::array<std::string_view, 4> kIdeaFields = {
    "title", "product_description", "implementation", "differentiation"};

/// Pre-truncation excess per field, in characters. 0 means within limit.
struct ViolationReport {
  long title_excess = 0;
  long description_excess = 0;
  long implementation_excess = 0;
  long differentiation_excess = 0;

  long total_excess() const {
    return title_excess + description_excess + implementation_excess +
           differentiation_excess;
  }
};

/// Number of characters in `s` under the given counting mode.
std::size_t char_len(std::string_view s, CountMode mode = CountMode::Scalars) noexcept;

/// Extracts the idea object from arbitrary model output (bare JSON, fenced
/// JSON, or JSON surrounded by prose). All four fields must be present,
/// strings, and non-empty. Throws NoJsonObject / MissingIdeaField / WrongType.
ProductIdea parse_idea(std::string_view raw);

/// Clamps every field to the longest prefix within its limit and reports the
/// pre-truncation excess. Idempotent; the output always satisfies the limits.
std::pair<ProductIdea, ViolationReport> truncate_idea(const ProductIdea& idea,
                                                      const FieldLimits& limits);

/// Compact JSON with exactly the four keys in canonical order.
std::string serialize_idea(const ProductIdea& idea);

bool within_limits(const ProductIdea& idea, const FieldLimits& limits);

}  // namespace ideaforge
