#include "ideaforge/cli.hpp"

#include <chrono>
#include <ctime>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ideaforge/corpus.hpp"
#include "ideaforge/default_prompt.hpp"
#include "ideaforge/elo.hpp"
#include "ideaforge/errors.hpp"
#include "ideaforge/generate.hpp"
#include "ideaforge/judge.hpp"
#include "ideaforge/provider.hpp"
#include "ideaforge/refine.hpp"
#include "ideaforge/select.hpp"
#include "ideaforge/store.hpp"

namespace ideaforge {

namespace {

struct AppConfig {
  std::string workspace = "workspace";
  std::string run_id = "default";
  std::string corpus_root;
  std::string domain = "NLP";
  std::string config_path;
  std::string limits_path;
  std::string mock_script;
  std::uint64_t seed = 0;
  int parallelism = 1;
  long budget = 0;  // 0 = unlimited
  double lambda = 0.5;
  double initial_rating = 1000.0;
  double k_factor = 32.0;
  FieldLimits limits;
  JudgeOptions judge_options;
  FieldAliases aliases = FieldAliases::defaults();
  std::map<std::string, RoleBinding> role_bindings = {
      {"generator", {"gpt-4.1", 0.7}},
      {"judge", {"qwen3-8b", 0.0}},
      {"prescreen", {"gpt-4.1-mini", 0.0}},
      {"refiner", {"gemini-2.5", 0.7}},
  };
  std::string provider_url;
  std::string provider_key;

  void load_config_file() {
    if (config_path.empty()) return;
    const nlohmann::json j =
        nlohmann::json::parse(read_text(config_path), nullptr, false);
    if (j.is_discarded()) {
      throw Error(ErrorCode::ConfigError, config_path + " is not valid JSON");
    }
    if (j.contains("roles")) {
      for (const auto& [role, binding] : j.at("roles").items()) {
        role_bindings[role] = RoleBinding{
            binding.value("model_id", role_bindings[role].model_id),
            binding.value("temperature", role_bindings[role].temperature)};
      }
    }
    if (j.contains("limits")) limits = limits_from_json(j.at("limits"));
    if (j.contains("elo")) {
      initial_rating = j.at("elo").value("initial_rating", initial_rating);
      k_factor = j.at("elo").value("k_factor", k_factor);
    }
    lambda = j.value("lambda", lambda);
    parallelism = j.value("parallelism", parallelism);
    budget = j.value("budget", budget);
    if (j.contains("judge")) {
      judge_options.claims_context_chars =
          j.at("judge").value("claims_context_chars", judge_options.claims_context_chars);
      judge_options.max_attempts =
          j.at("judge").value("max_attempts", judge_options.max_attempts);
    }
    if (j.contains("field_aliases")) aliases = FieldAliases::from_json(j.at("field_aliases"));
    if (j.contains("provider")) {
      provider_url = j.at("provider").value("url", provider_url);
      provider_key = j.at("provider").value("key", provider_key);
    }
  }

  void load_limits_file() {
    if (limits_path.empty()) return;
    const nlohmann::json j =
        nlohmann::json::parse(read_text(limits_path), nullptr, false);
    if (j.is_discarded()) {
      throw Error(ErrorCode::ConfigError, limits_path + " is not valid JSON");
    }
    limits = limits_from_json(j);
  }

  Domain parsed_domain() const { return domain_from_string(domain); }
};

/// Owns the provider stack (mock or HTTP, optionally budget-guarded) and
/// hands out role bindings.
struct ProviderSet {
  std::unique_ptr<Provider> base;
  std::unique_ptr<CostGuard> guard;
  std::unique_ptr<Provider> guarded;

  explicit ProviderSet(const AppConfig& config) {
    if (!config.mock_script.empty()) {
      base = std::make_unique<ScriptedMockProvider>(MockScript::load(config.mock_script));
    } else {
      HttpProviderConfig http;
      if (!config.provider_url.empty()) {
        http.base_url = config.provider_url;
        http.api_key = config.provider_key;
      } else {
        http = HttpProviderConfig::from_env();
      }
      base = std::make_unique<HttpProvider>(std::move(http));
    }
    if (config.budget > 0) {
      guard = std::make_unique<CostGuard>(config.budget);
      guarded = std::make_unique<GuardedProvider>(*base, *guard);
    }
  }

  Provider& active() { return guarded ? *guarded : *base; }

  Role role(const AppConfig& config, const std::string& name) {
    const auto it = config.role_bindings.find(name);
    Role role;
    role.provider = &active();
    if (it != config.role_bindings.end()) {
      role.model_id = it->second.model_id;
      role.temperature = it->second.temperature;
    }
    return role;
  }
};

std::string now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buffer[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buffer;
}

RunManifest make_manifest(const AppConfig& config) {
  RunManifest manifest;
  manifest.run_id = config.run_id;
  manifest.global_seed = config.seed;
  manifest.roles = config.role_bindings;
  manifest.limits = config.limits;
  manifest.corpus_path = config.corpus_root;
  manifest.created_at = now_iso8601();
  return manifest;
}

PromptCandidate resolve_candidate(Workspace& workspace, const std::string& id) {
  if (workspace.has_candidate(id)) return workspace.load_candidate(id);
  if (id == default_candidate().id) {
    workspace.save_candidate(default_candidate());
    return default_candidate();
  }
  throw Error(ErrorCode::UnknownPrompt,
              "no candidate '" + id + "' in " + workspace.prompts_dir().string());
}

std::vector<PatentRecord> load_domain_corpus(const AppConfig& config,
                                             std::vector<std::string>* warnings = nullptr) {
  if (config.corpus_root.empty()) {
    throw Error(ErrorCode::UsageError, "--corpus is required for this command");
  }
  return load_corpus(config.corpus_root, config.parsed_domain(), warnings, config.aliases);
}

int cmd_ingest(const AppConfig& config) {
  std::vector<std::string> warnings;
  const auto corpus = load_domain_corpus(config, &warnings);
  std::cout << "loaded " << corpus.size() << " patents (" << config.domain << ") from "
            << config.corpus_root << "\n";
  for (const auto& warning : warnings) std::cout << "warning: " << warning << "\n";
  return 0;
}

int cmd_generate(AppConfig& config, const std::string& prompt_id) {
  Workspace workspace(config.workspace);
  const PromptCandidate candidate = resolve_candidate(workspace, prompt_id);
  if (candidate.domain != config.parsed_domain()) {
    std::cerr << "warning: candidate " << candidate.id << " is tuned for "
              << to_string(candidate.domain) << ", generating for " << config.domain << "\n";
  }
  workspace.ensure_manifest(config.run_id, make_manifest(config));

  const auto corpus = load_domain_corpus(config);
  ProviderSet providers(config);
  const GenerationBatch batch =
      generate_set(providers.role(config, "generator"), candidate, corpus, config.limits,
                   {3, config.parallelism});

  long total_excess = 0;
  for (const auto& record : batch.records) {
    workspace.append_generation(config.run_id, record);
    total_excess += record.violation.total_excess();
  }
  std::cout << "generated " << batch.records.size() << "/" << corpus.size()
            << " ideas for prompt " << candidate.id << " (pre-truncation excess "
            << total_excess << " chars)\n";
  if (!batch.ok()) {
    for (const auto& failure : batch.failures) {
      std::cerr << "failed: " << failure.patent_id << ": " << failure.message << "\n";
    }
    return 1;
  }
  return 0;
}

int cmd_tournament(AppConfig& config, std::vector<std::string> prompts) {
  Workspace workspace(config.workspace);
  workspace.ensure_manifest(config.run_id, make_manifest(config));
  const auto corpus = load_domain_corpus(config);
  const RecordIndex index = workspace.load_record_index(config.run_id);
  if (prompts.empty()) {
    // Default to registered candidates only: records of challengers that
    // never passed the screen gate stay out of the rated pool.
    for (const auto& id : index.prompt_ids()) {
      if (workspace.has_candidate(id)) prompts.push_back(id);
    }
  }

  ProviderSet providers(config);
  TournamentContext context;
  context.judge = providers.role(config, "judge");
  context.records = &index;
  context.limits = config.limits;
  context.judge_options = config.judge_options;
  context.seed = config.seed;
  context.parallelism = config.parallelism;

  RatingTable table(config.initial_rating, config.k_factor);
  const auto results = run_tournament(context, prompts, corpus, table);

  for (const auto& result : results) {
    nlohmann::ordered_json line;
    line["order"] = result.applied_order_index;
    line["verdict"] = verdict_to_json(result.verdict);
    append_log(workspace.matches_path(config.run_id), line);
  }
  write_text_atomic(workspace.ratings_path(config.run_id), table.to_json().dump(2) + "\n");

  std::cout << results.size() << " matches judged\n";
  std::cout << format_leaderboard(rank(table));
  return 0;
}

int cmd_judge(AppConfig& config, const std::string& id_a, const std::string& id_b,
              const std::string& patent_id) {
  Workspace workspace(config.workspace);
  workspace.ensure_manifest(config.run_id, make_manifest(config));
  const auto corpus = load_domain_corpus(config);
  const PatentRecord* patent = nullptr;
  for (const auto& record : corpus) {
    if (record.id == patent_id) patent = &record;
  }
  if (patent == nullptr) {
    throw Error(ErrorCode::UsageError, "patent " + patent_id + " not in corpus");
  }
  const RecordIndex index = workspace.load_record_index(config.run_id);

  ProviderSet providers(config);
  SplitMix64 rng(derive_seed(config.seed, {patent_id, id_a, id_b}));
  const PairwiseVerdict verdict = judge_pair(
      providers.role(config, "judge"), *patent, index.get(id_a, patent_id),
      index.get(id_b, patent_id), rng, config.limits, config.judge_options);
  std::cout << verdict_to_json(verdict).dump(2) << "\n";
  return 0;
}

int cmd_refine(AppConfig& config, const std::string& champion_id,
               const std::vector<std::string>& loser_ids, int sample_cap) {
  Workspace workspace(config.workspace);
  workspace.ensure_manifest(config.run_id, make_manifest(config));
  const RecordIndex index = workspace.load_record_index(config.run_id);

  RefinementContext refinement;
  refinement.champion = resolve_candidate(workspace, champion_id);
  refinement.sample_cap = sample_cap;
  for (const auto& loser_id : loser_ids) {
    std::vector<GenerationRecord> samples;
    if (const auto* per_patent = index.for_prompt(loser_id)) {
      for (const auto& [_, record] : *per_patent) {
        if (static_cast<int>(samples.size()) >= sample_cap) break;
        samples.push_back(record);
      }
    }
    refinement.losers.emplace_back(resolve_candidate(workspace, loser_id),
                                   std::move(samples));
  }

  ProviderSet providers(config);
  std::vector<std::string> warnings;
  const PromptCandidate merged =
      merge_prompt(providers.role(config, "refiner"), refinement, &warnings);
  workspace.save_candidate(merged);
  for (const auto& warning : warnings) std::cerr << "warning: " << warning << "\n";
  std::cout << "merged candidate " << merged.id << " (parents:";
  for (const auto& parent : merged.parent_ids) std::cout << " " << parent;
  std::cout << ")\n";
  return 0;
}

int cmd_adapt(AppConfig& config, const std::string& base_id, const std::string& target) {
  Workspace workspace(config.workspace);
  workspace.ensure_manifest(config.run_id, make_manifest(config));
  const PromptCandidate base = resolve_candidate(workspace, base_id);
  ProviderSet providers(config);
  const PromptCandidate adapted =
      adapt_domain(providers.role(config, "refiner"), base, domain_from_string(target));
  workspace.save_candidate(adapted);
  std::cout << "adapted candidate " << adapted.id << " (domain "
            << to_string(adapted.domain) << ")\n";
  return 0;
}

int cmd_screen(AppConfig& config, const std::string& challenger_id,
               const std::string& incumbent_id, int sample_size) {
  Workspace workspace(config.workspace);
  workspace.ensure_manifest(config.run_id, make_manifest(config));
  auto corpus = load_domain_corpus(config);
  if (sample_size > 0 && static_cast<std::size_t>(sample_size) < corpus.size()) {
    corpus.resize(static_cast<std::size_t>(sample_size));
  }
  const RecordIndex index = workspace.load_record_index(config.run_id);

  ProviderSet providers(config);
  const ScreenOutcome outcome = prescreen(
      providers.role(config, "prescreen"), resolve_candidate(workspace, challenger_id),
      resolve_candidate(workspace, incumbent_id), corpus, index, config.seed,
      config.limits, config.judge_options, config.parallelism);
  std::cout << screen_outcome_to_json(outcome).dump(2) << "\n";
  return 0;
}

int cmd_optimize(AppConfig& config, int rounds) {
  Workspace workspace(config.workspace);
  workspace.ensure_manifest(config.run_id, make_manifest(config));
  const auto corpus = load_domain_corpus(config);
  const RecordIndex index = workspace.load_record_index(config.run_id);

  Registry registry;
  for (const auto& candidate : workspace.load_all_candidates()) {
    if (!index.complete_for(candidate.id, corpus)) {
      std::cerr << "skipping " << candidate.id << ": incomplete records for this corpus\n";
      continue;
    }
    std::vector<GenerationRecord> records;
    for (const auto& [_, record] : *index.for_prompt(candidate.id)) {
      records.push_back(record);
    }
    PromptCandidate rootless = candidate;
    rootless.parent_ids.clear();  // parents may not be part of this registry
    registry.admit(std::move(rootless), std::move(records));
  }

  ProviderSet providers(config);
  OptimizeContext context;
  context.generator = providers.role(config, "generator");
  context.judge = providers.role(config, "judge");
  context.prescreen_judge = providers.role(config, "prescreen");
  context.refiner = providers.role(config, "refiner");
  context.limits = config.limits;
  context.judge_options = config.judge_options;
  context.initial_rating = config.initial_rating;
  context.k_factor = config.k_factor;
  context.seed = config.seed;
  context.parallelism = config.parallelism;
  context.on_generation = [&](const GenerationRecord& record) {
    workspace.append_generation(config.run_id, record);
  };
  context.on_tournament = [&](const std::vector<MatchResult>& results) {
    for (const auto& result : results) {
      nlohmann::ordered_json line;
      line["order"] = result.applied_order_index;
      line["verdict"] = verdict_to_json(result.verdict);
      append_log(workspace.matches_path(config.run_id), line);
    }
  };
  context.log = [](const std::string& message) { std::cerr << message << "\n"; };

  const OptimizeResult result = optimize_loop(context, registry, corpus, rounds);

  for (const auto& id : registry.ids()) {
    if (!workspace.has_candidate(id)) workspace.save_candidate(registry.candidate(id));
  }
  write_text_atomic(workspace.ratings_path(config.run_id),
                    result.table.to_json().dump(2) + "\n");
  std::cout << "champion after " << result.rounds_run << " round(s), "
            << result.promotions << " promotion(s): " << result.champion.id << "\n";
  std::cout << format_leaderboard(rank(result.table));
  return 0;
}

int cmd_report(const AppConfig& config, bool as_json) {
  Workspace workspace(config.workspace);
  const auto path = workspace.ratings_path(config.run_id);
  const RatingTable table = RatingTable::from_json(nlohmann::json::parse(read_text(path)));
  const auto rows = rank(table);
  if (as_json) {
    std::cout << leaderboard_to_json(rows).dump(2) << "\n";
  } else {
    std::cout << format_leaderboard(rows);
  }
  return 0;
}

int cmd_select(AppConfig& config) {
  Workspace workspace(config.workspace);
  const auto corpus = load_domain_corpus(config);
  const RatingTable table = RatingTable::from_json(
      nlohmann::json::parse(read_text(workspace.ratings_path(config.run_id))));
  const RecordIndex index = workspace.load_record_index(config.run_id);

  const SelectionReport report = select_final(table, index, config.lambda);
  std::cout << report.to_json().dump(2) << "\n";

  const std::string submission = export_submission(index, report.chosen, corpus);
  const auto path = workspace.submission_path(config.run_id, config.parsed_domain());
  write_text_atomic(path, submission);
  std::cout << "submission for " << report.chosen << " written to " << path.string()
            << "\n";
  return 0;
}

int cmd_export(AppConfig& config, const std::string& prompt_id, const std::string& out) {
  Workspace workspace(config.workspace);
  const auto corpus = load_domain_corpus(config);
  const RecordIndex index = workspace.load_record_index(config.run_id);
  const std::string submission = export_submission(index, prompt_id, corpus);
  const auto path = out.empty()
                        ? workspace.submission_path(config.run_id, config.parsed_domain())
                        : std::filesystem::path(out);
  write_text_atomic(path, submission);
  std::cout << "submission for " << prompt_id << " written to " << path.string() << "\n";
  return 0;
}

void add_common_options(CLI::App* cmd, AppConfig& config, bool with_provider = true) {
  cmd->add_option("--workspace", config.workspace, "workspace directory");
  cmd->add_option("--run", config.run_id, "run id under <workspace>/runs/");
  cmd->add_option("--config", config.config_path, "JSON config file");
  cmd->add_option("--limits", config.limits_path, "JSON file overriding field limits");
  cmd->add_option("--seed", config.seed, "global seed for all stochastic choices");
  cmd->add_option("--parallel", config.parallelism, "max concurrent provider calls");
  if (with_provider) {
    cmd->add_option("--mock-script", config.mock_script,
                    "JSON mock script; replaces the live provider");
    cmd->add_option("--budget", config.budget, "max provider calls (0 = unlimited)");
  }
}

void add_corpus_options(CLI::App* cmd, AppConfig& config) {
  cmd->add_option("--corpus", config.corpus_root, "corpus root (<root>/<domain>/*.json)");
  cmd->add_option("--domain", config.domain, "patent domain: NLP, CS, or MC");
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv) {
  AppConfig config;
  CLI::App app{"patent-to-product idea pipeline: generation, Elo judging, "
               "prompt refinement"};
  app.set_version_flag("--version", "ideaforge 0.1.0");
  app.require_subcommand(1);

  std::string prompt_id;
  std::string champion_id;
  std::string base_id;
  std::string target_domain;
  std::string challenger_id;
  std::string incumbent_id;
  std::string patent_id;
  std::string out_path;
  std::vector<std::string> prompts;
  std::vector<std::string> loser_ids;
  std::vector<std::string> pair;
  int rounds = 1;
  int sample_cap = 5;
  int sample_size = 0;
  bool as_json = false;

  auto* ingest = app.add_subcommand("ingest", "load and validate a patent corpus");
  add_corpus_options(ingest, config);
  ingest->add_option("--config", config.config_path, "JSON config file");

  auto* generate = app.add_subcommand("generate", "generate ideas for every patent");
  add_common_options(generate, config);
  add_corpus_options(generate, config);
  generate->add_option("--prompt", prompt_id, "prompt candidate id")->required();

  auto* tournament =
      app.add_subcommand("tournament", "round-robin judging and Elo ratings");
  add_common_options(tournament, config);
  add_corpus_options(tournament, config);
  tournament->add_option("--prompts", prompts,
                         "candidate ids (default: all with records)");

  auto* judge = app.add_subcommand("judge", "judge one pair on one patent");
  add_common_options(judge, config);
  add_corpus_options(judge, config);
  judge->add_option("--pair", pair, "two candidate ids")->expected(2)->required();
  judge->add_option("--patent", patent_id, "patent id")->required();

  auto* refine = app.add_subcommand("refine", "graft loser fragments into the champion");
  add_common_options(refine, config);
  refine->add_option("--champion", champion_id, "champion candidate id")->required();
  refine->add_option("--losers", loser_ids, "loser candidate ids")->required();
  refine->add_option("--sample-cap", sample_cap, "sample outputs per loser");

  auto* adapt = app.add_subcommand("adapt", "adapt a prompt to another domain");
  add_common_options(adapt, config);
  adapt->add_option("--base", base_id, "base candidate id")->required();
  adapt->add_option("--target", target_domain, "target domain")->required();

  auto* screen = app.add_subcommand("screen", "cheap pre-screen vs the incumbent");
  add_common_options(screen, config);
  add_corpus_options(screen, config);
  screen->add_option("--challenger", challenger_id, "challenger id")->required();
  screen->add_option("--incumbent", incumbent_id, "incumbent id")->required();
  screen->add_option("--sample", sample_size, "screen on the first N patents only");

  auto* optimize = app.add_subcommand("optimize", "iterative refinement loop");
  add_common_options(optimize, config);
  add_corpus_options(optimize, config);
  optimize->add_option("--rounds", rounds, "max refinement rounds")->required();

  auto* report = app.add_subcommand("report", "print the leaderboard");
  report->add_option("--workspace", config.workspace, "workspace directory");
  report->add_option("--run", config.run_id, "run id");
  report->add_option("--domain", config.domain, "domain tag (informational)");
  report->add_flag("--json", as_json, "emit JSON instead of text");

  auto* select = app.add_subcommand("select", "choose the final candidate and export");
  add_common_options(select, config, /*with_provider=*/false);
  add_corpus_options(select, config);
  select->add_option("--lambda", config.lambda,
                     "rating points per excess character");

  auto* exportc = app.add_subcommand("export", "export one prompt's submission");
  add_common_options(exportc, config, /*with_provider=*/false);
  add_corpus_options(exportc, config);
  exportc->add_option("--prompt", prompt_id, "prompt candidate id")->required();
  exportc->add_option("--out", out_path, "output path (default: run directory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    config.load_config_file();
    config.load_limits_file();  // --limits wins over the config file
    if (ingest->parsed()) return cmd_ingest(config);
    if (generate->parsed()) return cmd_generate(config, prompt_id);
    if (tournament->parsed()) return cmd_tournament(config, prompts);
    if (judge->parsed()) return cmd_judge(config, pair[0], pair[1], patent_id);
    if (refine->parsed()) return cmd_refine(config, champion_id, loser_ids, sample_cap);
    if (adapt->parsed()) return cmd_adapt(config, base_id, target_domain);
    if (screen->parsed()) return cmd_screen(config, challenger_id, incumbent_id, sample_size);
    if (optimize->parsed()) return cmd_optimize(config, rounds);
    if (report->parsed()) return cmd_report(config, as_json);
    if (select->parsed()) return cmd_select(config);
    if (exportc->parsed()) return cmd_export(config, prompt_id, out_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::UsageError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace ideaforge
