#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ideaforge/generate.hpp"
#include "ideaforge/idea.hpp"

namespace ideaforge {

/// Appends `record` as one JSON line. The line is written with a single
/// O_APPEND write, so concurrent writers interleave only at line granularity.
void append_log(const std::filesystem::path& path, const nlohmann::ordered_json& record);

/// All records of a JSON-lines file, in file order. Missing file -> empty.
std::vector<nlohmann::ordered_json> read_log(const std::filesystem::path& path);

/// Write-to-temp-then-rename, so readers never observe a partial file.
void write_text_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_text(const std::filesystem::path& path);

struct RoleBinding {
  std::string model_id;
  double temperature = 0.0;
};

/// Everything needed to replay a run. Persisted before any provider call.
struct RunManifest {
  std::string run_id;
  std::uint64_t global_seed = 0;
  std::map<std::string, RoleBinding> roles;  // generator/judge/prescreen/refiner
  FieldLimits limits;
  std::string corpus_path;
  std::string created_at;  // ISO 8601, informational only

  nlohmann::ordered_json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);
};

nlohmann::ordered_json limits_to_json(const FieldLimits& limits);
FieldLimits limits_from_json(const nlohmann::json& j);

/// On-disk layout:
///   <root>/prompts/<candidate id>.json        one file per candidate
///   <root>/prompts/lineage.json               id -> parent ids index
///   <root>/runs/<run id>/manifest.json
///   <root>/runs/<run id>/generations.jsonl
///   <root>/runs/<run id>/matches.jsonl
///   <root>/runs/<run id>/ratings.json
///   <root>/runs/<run id>/submission_<domain>.json
class Workspace {
 public:
  explicit Workspace(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path prompts_dir() const { return root_ / "prompts"; }
  std::filesystem::path run_dir(const std::string& run_id) const;
  std::filesystem::path manifest_path(const std::string& run_id) const;
  std::filesystem::path generations_path(const std::string& run_id) const;
  std::filesystem::path matches_path(const std::string& run_id) const;
  std::filesystem::path ratings_path(const std::string& run_id) const;
  std::filesystem::path submission_path(const std::string& run_id, Domain domain) const;

  void save_candidate(const PromptCandidate& candidate);
  PromptCandidate load_candidate(const std::string& id) const;
  bool has_candidate(const std::string& id) const;
  std::vector<PromptCandidate> load_all_candidates() const;

  /// Ensures the manifest exists before providers are touched; an existing
  /// manifest is reloaded, not overwritten.
  RunManifest ensure_manifest(const std::string& run_id, const RunManifest& fresh);

  void append_generation(const std::string& run_id, const GenerationRecord& record);
  std::vector<GenerationRecord> load_generations(const std::string& run_id) const;
  RecordIndex load_record_index(const std::string& run_id) const;

 private:
  void refresh_lineage_index() const;

  std::filesystem::path root_;
};

}  // namespace ideaforge
