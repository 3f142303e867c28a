#include "ideaforge/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ideaforge/errors.hpp"

namespace ideaforge {

namespace fs = std::filesystem;

void append_log(const fs::path& path, const nlohmann::ordered_json& record) {
  std::string line = record.dump();
  line.push_back('\n');

  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) {
    throw Error(ErrorCode::IoError,
                "open " + path.string() + ": " + std::strerror(errno));
  }
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(fd, line.data() + written, line.size() - written);
    if (n < 0) {
      const int saved = errno;
      ::close(fd);
      throw Error(ErrorCode::IoError,
                  "write " + path.string() + ": " + std::strerror(saved));
    }
    written += static_cast<std::size_t>(n);
  }
  ::close(fd);
}

std::vector<nlohmann::ordered_json> read_log(const fs::path& path) {
  std::vector<nlohmann::ordered_json> records;
  std::ifstream in(path, std::ios::binary);
  if (!in) return records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto parsed = nlohmann::ordered_json::parse(line, nullptr, false);
    if (parsed.is_discarded()) {
      throw Error(ErrorCode::MalformedJson,
                  path.string() + ":" + std::to_string(line_no) + " is not valid JSON");
    }
    records.push_back(std::move(parsed));
  }
  return records;
}

void write_text_atomic(const fs::path& path, std::string_view content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::IoError, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    throw Error(ErrorCode::IoError,
                "rename " + tmp.string() + " -> " + path.string() + ": " + ec.message());
  }
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

nlohmann::ordered_json limits_to_json(const FieldLimits& limits) {
  return {{"title_max", limits.title_max},
          {"description_max", limits.description_max},
          {"implementation_max", limits.implementation_max},
          {"differentiation_max", limits.differentiation_max},
          {"count_mode", limits.count_mode == CountMode::Bytes ? "bytes" : "scalars"}};
}

FieldLimits limits_from_json(const nlohmann::json& j) {
  FieldLimits limits;
  limits.title_max = j.value("title_max", limits.title_max);
  limits.description_max = j.value("description_max", limits.description_max);
  limits.implementation_max = j.value("implementation_max", limits.implementation_max);
  limits.differentiation_max = j.value("differentiation_max", limits.differentiation_max);
  const std::string mode = j.value("count_mode", "scalars");
  if (mode == "bytes") {
    limits.count_mode = CountMode::Bytes;
  } else if (mode == "scalars") {
    limits.count_mode = CountMode::Scalars;
  } else {
    throw Error(ErrorCode::ConfigError, "count_mode must be 'scalars' or 'bytes'");
  }
  return limits;
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["run_id"] = run_id;
  j["global_seed"] = global_seed;
  nlohmann::ordered_json roles_json = nlohmann::ordered_json::object();
  for (const auto& [role, binding] : roles) {
    roles_json[role] = {{"model_id", binding.model_id},
                        {"temperature", binding.temperature}};
  }
  j["roles"] = std::move(roles_json);
  j["limits"] = limits_to_json(limits);
  j["corpus_path"] = corpus_path;
  j["created_at"] = created_at;
  return j;
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
  RunManifest manifest;
  manifest.run_id = j.at("run_id").get<std::string>();
  manifest.global_seed = j.at("global_seed").get<std::uint64_t>();
  if (j.contains("roles")) {
    for (const auto& [role, binding] : j.at("roles").items()) {
      manifest.roles[role] = RoleBinding{binding.value("model_id", ""),
                                         binding.value("temperature", 0.0)};
    }
  }
  if (j.contains("limits")) manifest.limits = limits_from_json(j.at("limits"));
  manifest.corpus_path = j.value("corpus_path", "");
  manifest.created_at = j.value("created_at", "");
  return manifest;
}

Workspace::Workspace(fs::path root) : root_(std::move(root)) {
  fs::create_directories(prompts_dir());
  fs::create_directories(root_ / "runs");
}

fs::path Workspace::run_dir(const std::string& run_id) const {
  return root_ / "runs" / run_id;
}

fs::path Workspace::manifest_path(const std::string& run_id) const {
  return run_dir(run_id) / "manifest.json";
}

fs::path Workspace::generations_path(const std::string& run_id) const {
  return run_dir(run_id) / "generations.jsonl";
}

fs::path Workspace::matches_path(const std::string& run_id) const {
  return run_dir(run_id) / "matches.jsonl";
}

fs::path Workspace::ratings_path(const std::string& run_id) const {
  return run_dir(run_id) / "ratings.json";
}

fs::path Workspace::submission_path(const std::string& run_id, Domain domain) const {
  return run_dir(run_id) / ("submission_" + std::string(to_string(domain)) + ".json");
}

void Workspace::save_candidate(const PromptCandidate& candidate) {
  if (candidate.id.empty()) {
    throw Error(ErrorCode::Precondition, "candidate id must not be empty");
  }
  write_text_atomic(prompts_dir() / (candidate.id + ".json"),
                    candidate_to_json(candidate).dump(2) + "\n");
  refresh_lineage_index();
}

bool Workspace::has_candidate(const std::string& id) const {
  return fs::exists(prompts_dir() / (id + ".json"));
}

PromptCandidate Workspace::load_candidate(const std::string& id) const {
  const fs::path path = prompts_dir() / (id + ".json");
  if (!fs::exists(path)) {
    throw Error(ErrorCode::UnknownPrompt, "no candidate file " + path.string());
  }
  return candidate_from_json(nlohmann::json::parse(read_text(path)));
}

std::vector<PromptCandidate> Workspace::load_all_candidates() const {
  std::vector<PromptCandidate> candidates;
  for (const auto& entry : fs::directory_iterator(prompts_dir())) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    if (entry.path().filename() == "lineage.json") continue;
    candidates.push_back(candidate_from_json(nlohmann::json::parse(read_text(entry.path()))));
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const PromptCandidate& a, const PromptCandidate& b) { return a.id < b.id; });
  return candidates;
}

void Workspace::refresh_lineage_index() const {
  nlohmann::ordered_json index = nlohmann::ordered_json::object();
  for (const auto& candidate : load_all_candidates()) {
    index[candidate.id] = candidate.parent_ids;
  }
  write_text_atomic(prompts_dir() / "lineage.json", index.dump(2) + "\n");
}

RunManifest Workspace::ensure_manifest(const std::string& run_id, const RunManifest& fresh) {
  fs::create_directories(run_dir(run_id));
  const fs::path path = manifest_path(run_id);
  if (fs::exists(path)) {
    return RunManifest::from_json(nlohmann::json::parse(read_text(path)));
  }
  write_text_atomic(path, fresh.to_json().dump(2) + "\n");
  return fresh;
}

void Workspace::append_generation(const std::string& run_id, const GenerationRecord& record) {
  fs::create_directories(run_dir(run_id));
  append_log(generations_path(run_id), generation_record_to_json(record));
}

std::vector<GenerationRecord> Workspace::load_generations(const std::string& run_id) const {
  std::vector<GenerationRecord> records;
  for (const auto& line : read_log(generations_path(run_id))) {
    records.push_back(generation_record_from_json(line));
  }
  return records;
}

RecordIndex Workspace::load_record_index(const std::string& run_id) const {
  RecordIndex index;
  for (auto& record : load_generations(run_id)) index.add(std::move(record));
  return index;
}

}  // namespace ideaforge
