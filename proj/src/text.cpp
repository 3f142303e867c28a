#include "ideaforge/text.hpp"

#include <algorithm>
#include <cctype>

namespace ideaforge::text {

namespace {

// Byte length of the scalar starting at s[pos], or 1 for an ill-formed lead.
std::size_t scalar_width(std::string_view s, std::size_t pos) noexcept {
  const auto lead = static_cast<unsigned char>(s[pos]);
  std::size_t expect = 1;
  if (lead < 0x80) {
    expect = 1;
  } else if ((lead & 0xE0) == 0xC0) {
    expect = 2;
  } else if ((lead & 0xF0) == 0xE0) {
    expect = 3;
  } else if ((lead & 0xF8) == 0xF0) {
    expect = 4;
  } else {
    return 1;  // stray continuation or invalid lead
  }
  if (pos + expect > s.size()) return 1;
  for (std::size_t i = 1; i < expect; ++i) {
    if ((static_cast<unsigned char>(s[pos + i]) & 0xC0) != 0x80) return 1;
  }
  return expect;
}

}  // namespace

std::size_t char_len(std::string_view s) noexcept {
  std::size_t count = 0;
  for (std::size_t pos = 0; pos < s.size(); pos += scalar_width(s, pos)) ++count;
  return count;
}

std::string_view utf8_prefix(std::string_view s, std::size_t max_scalars) noexcept {
  std::size_t pos = 0;
  std::size_t count = 0;
  while (pos < s.size() && count < max_scalars) {
    pos += scalar_width(s, pos);
    ++count;
  }
  return s.substr(0, pos);
}

std::string_view utf8_prefix_bytes(std::string_view s, std::size_t max_bytes) noexcept {
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t width = scalar_width(s, pos);
    if (pos + width > max_bytes) break;
    pos += width;
  }
  return s.substr(0, pos);
}

std::optional<nlohmann::ordered_json> extract_json_object(std::string_view raw) {
  for (std::size_t start = raw.find('{'); start != std::string_view::npos;
       start = raw.find('{', start + 1)) {
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = start; i < raw.size(); ++i) {
      const char c = raw[i];
      if (in_string) {
        if (escaped) {
          escaped = false;
        } else if (c == '\\') {
          escaped = true;
        } else if (c == '"') {
          in_string = false;
        }
        continue;
      }
      if (c == '"') {
        in_string = true;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}') {
        if (--depth == 0) {
          const auto span = raw.substr(start, i - start + 1);
          auto parsed = nlohmann::ordered_json::parse(span, nullptr,
                                                      /*allow_exceptions=*/false);
          if (!parsed.is_discarded() && parsed.is_object()) return parsed;
          break;  // balanced but unparseable; try the next '{'
        }
      }
    }
  }
  return std::nullopt;
}

std::string trim(std::string_view s) {
  const auto* first = std::find_if_not(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
  const auto* last = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) {
                       return std::isspace(c) != 0;
                     }).base();
  return first < last ? std::string(first, last) : std::string();
}

std::string strip_code_fence(std::string_view s) {
  std::string t = trim(s);
  if (t.size() < 6 || t.compare(0, 3, "```") != 0 ||
      t.compare(t.size() - 3, 3, "```") != 0) {
    return t;
  }
  std::size_t body = t.find('\n');
  if (body == std::string::npos || body > t.size() - 3) return t;
  return trim(std::string_view(t).substr(body + 1, t.size() - 3 - body - 1));
}

}  // namespace ideaforge::text
