#include "ideaforge/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "ideaforge/errors.hpp"

namespace ideaforge {

namespace {

using nlohmann::ordered_json;

// Pulls the first alias present in `doc`, erasing it so the remainder can be
// kept as extras. Returns true if found.
bool take_string_field(ordered_json& doc, const std::vector<std::string>& names,
                       std::string& out) {
  for (const auto& name : names) {
    auto it = doc.find(name);
    if (it == doc.end()) continue;
    if (it->is_string()) {
      out = it->get<std::string>();
    } else {
      // Some corpora ship claims as arrays of strings; join them.
      std::ostringstream joined;
      if (it->is_array()) {
        bool first = true;
        for (const auto& part : *it) {
          if (!first) joined << "\n";
          first = false;
          joined << (part.is_string() ? part.get<std::string>() : part.dump());
        }
        out = joined.str();
      } else {
        out = it->dump();
      }
    }
    doc.erase(it);
    return true;
  }
  return false;
}

}  // namespace

std::string_view to_string(Domain domain) {
  switch (domain) {
    case Domain::NLP: return "NLP";
    case Domain::CS: return "CS";
    case Domain::MC: return "MC";
  }
  return "NLP";
}

Domain domain_from_string(std::string_view s) {
  std::string upper(s);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "NLP") return Domain::NLP;
  if (upper == "CS") return Domain::CS;
  if (upper == "MC") return Domain::MC;
  throw Error(ErrorCode::UnknownDomain,
              "domain must be one of NLP, CS, MC; got '" + std::string(s) + "'");
}

const FieldAliases& FieldAliases::defaults() {
  static const FieldAliases kDefaults{
      {"publication_number", "publication-number", "publicationNumber", "id"},
      {"title", "invention_title", "patent_title"},
      {"abstract", "abstract_text", "summary"},
      {"claims", "claim_text"},
      {"description", "descriptions", "detailed_description", "full_description"},
  };
  return kDefaults;
}

FieldAliases FieldAliases::from_json(const nlohmann::json& j) {
  FieldAliases aliases = defaults();
  auto merge = [&j](const char* key, std::vector<std::string>& into) {
    if (!j.contains(key)) return;
    into = j.at(key).get<std::vector<std::string>>();
  };
  merge("id", aliases.id);
  merge("title", aliases.title);
  merge("abstract", aliases.abstract);
  merge("claims", aliases.claims);
  merge("description", aliases.description);
  return aliases;
}

PatentRecord parse_patent(std::string_view raw_json, Domain domain,
                          const FieldAliases& aliases) {
  auto doc = ordered_json::parse(raw_json, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    throw Error(ErrorCode::MalformedJson, "patent document is not valid JSON");
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::MalformedJson, "patent document must be a JSON object");
  }

  PatentRecord record;
  record.domain = domain;

  if (!take_string_field(doc, aliases.id, record.id) || record.id.empty()) {
    throw Error(ErrorCode::MissingField, "publication_number");
  }
  if (!take_string_field(doc, aliases.title, record.title) || record.title.empty()) {
    throw Error(ErrorCode::MissingField, "title");
  }
  if (!take_string_field(doc, aliases.abstract, record.abstract) ||
      record.abstract.empty()) {
    throw Error(ErrorCode::MissingField, "abstract");
  }
  take_string_field(doc, aliases.claims, record.claims);
  take_string_field(doc, aliases.description, record.description);

  record.extra = std::move(doc);  // whatever was not consumed above
  return record;
}

nlohmann::ordered_json patent_to_json(const PatentRecord& record) {
  ordered_json out;
  out["publication_number"] = record.id;
  out["title"] = record.title;
  out["abstract"] = record.abstract;
  out["claims"] = record.claims;
  out["description"] = record.description;
  for (const auto& [key, value] : record.extra.items()) out[key] = value;
  return out;
}

std::vector<std::string> patent_warnings(const PatentRecord& record) {
  std::vector<std::string> warnings;
  if (record.claims.empty()) warnings.push_back(record.id + ": claims empty");
  if (record.description.empty()) warnings.push_back(record.id + ": description empty");
  return warnings;
}

std::vector<PatentRecord> load_corpus(const std::filesystem::path& root, Domain domain,
                                      std::vector<std::string>* warnings,
                                      const FieldAliases& aliases) {
  namespace fs = std::filesystem;
  const fs::path dir = root / std::string(to_string(domain));
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::EmptyCorpus, "no such corpus directory: " + dir.string());
  }

  std::vector<PatentRecord> records;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + entry.path().string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
      records.push_back(parse_patent(buffer.str(), domain, aliases));
    } catch (const Error& e) {
      throw Error(e.code(), entry.path().filename().string() + ": " + e.what());
    }
  }
  if (records.empty()) {
    throw Error(ErrorCode::EmptyCorpus, "no patent JSON files under " + dir.string());
  }

  // Filesystem listing order must never leak into downstream behavior.
  std::sort(records.begin(), records.end(),
            [](const PatentRecord& a, const PatentRecord& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].id == records[i - 1].id) {
      throw Error(ErrorCode::DuplicateId, records[i].id);
    }
  }

  if (warnings != nullptr) {
    for (const auto& record : records) {
      auto w = patent_warnings(record);
      warnings->insert(warnings->end(), w.begin(), w.end());
    }
  }
  return records;
}

}  // namespace ideaforge
