#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace ideaforge::text {

/// Number of Unicode scalar values in a UTF-8 string. Each byte of an
/// ill-formed sequence counts as one scalar, so the function is total over
/// arbitrary input and never throws.
std::size_t char_len(std::string_view s) noexcept;

/// Longest prefix of `s` holding at most `max_scalars` scalar values.
/// Cuts only at scalar boundaries; may split a grapheme cluster.
std::string_view utf8_prefix(std::string_view s, std::size_t max_scalars) noexcept;

/// Longest scalar-boundary prefix of `s` no longer than `max_bytes`. Never
/// splits a scalar, so the result stays valid UTF-8.
std::string_view utf8_prefix_bytes(std::string_view s, std::size_t max_bytes) noexcept;

/// First top-level JSON object embedded anywhere in `raw` (the text may
/// surround it with prose or code fences). Candidate spans are located by
/// a string-aware brace scan and handed to the JSON parser; the first span
/// that parses as an object wins.
std::optional<nlohmann::ordered_json> extract_json_object(std::string_view raw);

std::string trim(std::string_view s);

/// Strips a single surrounding markdown code fence (``` or ```lang) if the
/// trimmed text is fully enclosed by one; otherwise returns the trimmed text.
std::string strip_code_fence(std::string_view s);

}  // namespace ideaforge::text
