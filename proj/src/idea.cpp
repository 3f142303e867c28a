#include "ideaforge/idea.hpp"

#include <json.hpp>

#include "ideaforge/errors.hpp"
#include "ideaforge/text.hpp"

namespace ideaforge {

namespace {

std::string truncate_field(const std::string& value, int limit, CountMode mode,
                           long& excess) {
  const std::size_t length = char_len(value, mode);
  const auto budget = static_cast<std::size_t>(limit);
  excess = length > budget ? static_cast<long>(length - budget) : 0;
  if (excess == 0) return value;
  // Byte mode also cuts at scalar boundaries: the output must stay valid
  // UTF-8 for JSON serialization, so a multi-byte scalar straddling the
  // budget is dropped whole.
  if (mode == CountMode::Bytes) return std::string(text::utf8_prefix_bytes(value, budget));
  return std::string(text::utf8_prefix(value, budget));
}

}  // namespace

std::size_t char_len(std::string_view s, CountMode mode) noexcept {
  return mode == CountMode::Bytes ? s.size() : text::char_len(s);
}

ProductIdea parse_idea(std::string_view raw) {
  auto object = text::extract_json_object(raw);
  if (!object) {
    throw Error(ErrorCode::NoJsonObject, "no JSON object found in model output");
  }
  ProductIdea idea;
  std::string* slots[4] = {&idea.title, &idea.product_description,
                           &idea.implementation, &idea.differentiation};
  for (std::size_t i = 0; i < kIdeaFields.size(); ++i) {
    const std::string key(kIdeaFields[i]);
    auto it = object->find(key);
    if (it == object->end()) throw Error(ErrorCode::MissingIdeaField, key);
    if (!it->is_string()) throw Error(ErrorCode::WrongType, key);
    *slots[i] = it->get<std::string>();
    if (slots[i]->empty()) {
      throw Error(ErrorCode::MissingIdeaField, key + " is empty");
    }
  }
  return idea;
}

std::pair<ProductIdea, ViolationReport> truncate_idea(const ProductIdea& idea,
                                                      const FieldLimits& limits) {
  ProductIdea out;
  ViolationReport report;
  out.title = truncate_field(idea.title, limits.title_max, limits.count_mode,
                             report.title_excess);
  out.product_description =
      truncate_field(idea.product_description, limits.description_max,
                     limits.count_mode, report.description_excess);
  out.implementation =
      truncate_field(idea.implementation, limits.implementation_max,
                     limits.count_mode, report.implementation_excess);
  out.differentiation =
      truncate_field(idea.differentiation, limits.differentiation_max,
                     limits.count_mode, report.differentiation_excess);
  return {std::move(out), report};
}

std::string serialize_idea(const ProductIdea& idea) {
  nlohmann::ordered_json out;
  out["title"] = idea.title;
  out["product_description"] = idea.product_description;
  out["implementation"] = idea.implementation;
  out["differentiation"] = idea.differentiation;
  return out.dump();
}

bool within_limits(const ProductIdea& idea, const FieldLimits& limits) {
  const auto mode = limits.count_mode;
  return char_len(idea.title, mode) <= static_cast<std::size_t>(limits.title_max) &&
         char_len(idea.product_description, mode) <=
             static_cast<std::size_t>(limits.description_max) &&
         char_len(idea.implementation, mode) <=
             static_cast<std::size_t>(limits.implementation_max) &&
         char_len(idea.differentiation, mode) <=
             static_cast<std::size_t>(limits.differentiation_max);
}

}  // namespace ideaforge
