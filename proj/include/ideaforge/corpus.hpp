#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ideaforge {

enum class Domain { NLP, CS, MC };

std::string_view to_string(Domain domain);
Domain domain_from_string(std::string_view s);  // throws UnknownDomain

/// One patent's bibliographic and textual fields, the generation input.
/// Unrecognized JSON fields are kept verbatim in `extra`.
struct PatentRecord {
  std::string id;  // publication number
  std::string title;
  std::string abstract;
  std::string claims;
  std::string description;
  Domain domain = Domain::NLP;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

/// Accepted field names per logical field, checked in order. The official
/// corpus format does not pin exact key names, so the map is configurable.
struct FieldAliases {
  std::vector<std::string> id;
  std::vector<std::string> title;
  std::vector<std::string> abstract;
  std::vector<std::string> claims;
  std::vector<std::string> description;

  static const FieldAliases& defaults();
  static FieldAliases from_json(const nlohmann::json& j);
};

/// Parses one patent JSON document. Recognized fields are mapped, everything
/// else lands in `extra`. Throws MalformedJson / MissingField.
PatentRecord parse_patent(std::string_view raw_json, Domain domain,
                          const FieldAliases& aliases = FieldAliases::defaults());

/// Canonical JSON form of a record: recognized fields under their canonical
/// names followed by the retained extras. parse -> serialize -> parse is
/// identity on recognized fields.
nlohmann::ordered_json patent_to_json(const PatentRecord& record);

/// Soft issues worth surfacing but not failing on (empty claims/description).
std::vector<std::string> patent_warnings(const PatentRecord& record);

/// Loads <root>/<domain>/*.json, sorted by id ascending (the canonical order
/// used everywhere downstream). Throws EmptyCorpus / DuplicateId and
/// propagates per-file parse errors with the filename attached.
std::vector<PatentRecord> load_corpus(const std::filesystem::path& root, Domain domain,
                                      std::vector<std::string>* warnings = nullptr,
                                      const FieldAliases& aliases = FieldAliases::defaults());

}  // namespace ideaforge
