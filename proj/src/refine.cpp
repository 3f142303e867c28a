#include "ideaforge/refine.hpp"

#include <cctype>
#include <sstream>

#include "ideaforge/errors.hpp"
#include "ideaforge/text.hpp"
#include "parallel_util.hpp"

namespace ideaforge {

namespace {

std::string_view domain_full_name(Domain domain) {
  switch (domain) {
    case Domain::NLP: return "Natural Language Processing";
    case Domain::CS: return "Computer Science";
    case Domain::MC: return "Materials Chemistry";
  }
  return "Natural Language Processing";
}

// Refiner replies are either plain prompt text (possibly fenced) or a JSON
// envelope {"system_prompt": ..., "user_template": ...}. A JSON object
// without a system_prompt key is treated as prompt text, since real system
// prompts often embed JSON output examples.
struct RefinerReply {
  std::string system_prompt;
  std::optional<std::string> user_template;
};

RefinerReply parse_refiner_reply(const std::string& raw) {
  if (auto object = text::extract_json_object(raw);
      object && object->contains("system_prompt") &&
      object->at("system_prompt").is_string()) {
    RefinerReply reply;
    reply.system_prompt = object->at("system_prompt").get<std::string>();
    if (object->contains("user_template") && object->at("user_template").is_string()) {
      reply.user_template = object->at("user_template").get<std::string>();
    }
    return reply;
  }
  RefinerReply reply;
  reply.system_prompt = text::strip_code_fence(raw);
  return reply;
}

}  // namespace

const std::string kRefinerSystemPrompt =
    "You are a prompt engineer improving system prompts for a patent-to-product "
    "ideation pipeline. Work only with the material provided. Return only the "
    "improved system prompt, with no commentary.";

PromptCandidate merge_prompt(const Role& refiner, const RefinementContext& context,
                             std::vector<std::string>* warnings) {
  if (context.losers.empty()) {
    throw Error(ErrorCode::Precondition, "merge_prompt needs at least one loser");
  }

  std::ostringstream prompt;
  prompt << "Current best-performing system prompt:\n---\n"
         << context.champion.system_prompt << "\n---\n\n";
  for (const auto& [loser, samples] : context.losers) {
    prompt << "Underperforming prompt '" << loser.id << "':\n---\n"
           << loser.system_prompt << "\n---\n";
    if (!samples.empty()) {
      prompt << "Sample outputs from '" << loser.id << "':\n";
      int shown = 0;
      for (const auto& record : samples) {
        if (shown++ >= context.sample_cap) break;
        prompt << shown << ". " << serialize_idea(record.idea) << "\n";
      }
    }
    prompt << "\n";
  }
  prompt << "Analyze the underperforming prompts and their outputs, identify "
            "components that work, and integrate them into the best-performing "
            "prompt. Return the improved system prompt.";

  const ChatResponse response =
      refiner.complete(kRefinerSystemPrompt, prompt.str());
  const RefinerReply reply = parse_refiner_reply(response.text);
  if (text::trim(reply.system_prompt).empty()) {
    throw Error(ErrorCode::RefinerUnparseable, "no system prompt text in refiner reply");
  }

  PromptCandidate merged;
  merged.system_prompt = reply.system_prompt;
  merged.user_template = context.champion.user_template;
  if (reply.user_template) {
    try {
      validate_template(*reply.user_template);
      merged.user_template = *reply.user_template;
    } catch (const Error&) {
      // PlaceholderLost: fall back to the champion's known-good template.
      if (warnings != nullptr) {
        warnings->push_back("PlaceholderLost: refiner template dropped a "
                            "placeholder; champion template restored");
      }
    }
  }
  merged.domain = context.champion.domain;
  merged.parent_ids.push_back(context.champion.id);
  for (const auto& [loser, _] : context.losers) merged.parent_ids.push_back(loser.id);
  merged.notes = "merged from " + context.champion.id;
  merged.id = derive_candidate_id("merged", merged);
  validate_template(merged.user_template);
  return merged;
}

PromptCandidate adapt_domain(const Role& refiner, const PromptCandidate& base,
                             Domain target) {
  if (base.domain == target) {
    throw Error(ErrorCode::Precondition,
                "adapt_domain target equals the base domain (" +
                    std::string(to_string(target)) + ")");
  }

  std::ostringstream prompt;
  prompt << "Base system prompt (tuned for " << domain_full_name(base.domain)
         << " patents):\n---\n"
         << base.system_prompt << "\n---\n\n";
  prompt << "Rewrite it for " << domain_full_name(target)
         << " patents: inject domain-specific terminology and adjust examples, "
            "but preserve the structure, constraints, and output format. "
            "Return the rewritten system prompt.";

  const ChatResponse response = refiner.complete(kRefinerSystemPrompt, prompt.str());
  const RefinerReply reply = parse_refiner_reply(response.text);
  if (text::trim(reply.system_prompt).empty()) {
    throw Error(ErrorCode::RefinerUnparseable, "no system prompt text in refiner reply");
  }

  PromptCandidate adapted;
  adapted.system_prompt = reply.system_prompt;
  adapted.user_template = base.user_template;
  adapted.domain = target;
  adapted.parent_ids = {base.id};
  adapted.notes = "adapted from " + base.id + " for " + std::string(to_string(target));
  std::string domain_tag(to_string(target));
  for (auto& c : domain_tag) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  adapted.id = base.id + "-" + domain_tag;
  validate_template(adapted.user_template);
  return adapted;
}

nlohmann::ordered_json screen_outcome_to_json(const ScreenOutcome& outcome) {
  nlohmann::ordered_json j;
  j["challenger_id"] = outcome.challenger_id;
  j["incumbent_id"] = outcome.incumbent_id;
  j["wins"] = outcome.wins;
  j["losses"] = outcome.losses;
  j["ties"] = outcome.ties;
  j["promoted"] = outcome.promoted;
  return j;
}

ScreenOutcome prescreen(const Role& cheap_judge, const PromptCandidate& challenger,
                        const PromptCandidate& incumbent,
                        const std::vector<PatentRecord>& sample,
                        const RecordIndex& records, std::uint64_t seed,
                        const FieldLimits& limits, const JudgeOptions& options,
                        int parallelism) {
  if (sample.empty()) {
    throw Error(ErrorCode::Precondition, "prescreen needs a non-empty sample");
  }
  if (!records.complete_for(challenger.id, sample) ||
      !records.complete_for(incumbent.id, sample)) {
    throw Error(ErrorCode::MissingRecords,
                "prescreen requires records for every sample patent");
  }

  struct Slot {
    std::optional<PairwiseVerdict> verdict;
    std::optional<Error> error;
  };
  std::vector<Slot> slots(sample.size());
  detail::parallel_for(sample.size(), parallelism, [&](std::size_t i) {
    const auto& patent = sample[i];
    SplitMix64 rng(derive_seed(seed, {patent.id, challenger.id, incumbent.id}));
    try {
      slots[i].verdict = judge_pair(
          cheap_judge, patent, records.get(challenger.id, patent.id),
          records.get(incumbent.id, patent.id), rng, limits, options);
    } catch (const Error& e) {
      slots[i].error = e;
    }
  });

  ScreenOutcome outcome;
  outcome.challenger_id = challenger.id;
  outcome.incumbent_id = incumbent.id;
  for (const auto& slot : slots) {
    if (slot.error) throw *slot.error;
    for (const auto criterion : kAllCriteria) {
      switch (slot.verdict->outcomes[criterion_index(criterion)]) {
        case Outcome::FirstWins: ++outcome.wins; break;
        case Outcome::SecondWins: ++outcome.losses; break;
        case Outcome::Tie: ++outcome.ties; break;
      }
    }
  }
  outcome.promoted = outcome.wins > outcome.losses;
  return outcome;
}

void Registry::admit(PromptCandidate candidate, std::vector<GenerationRecord> records) {
  if (candidates_.count(candidate.id) > 0) {
    throw Error(ErrorCode::DuplicateId, "candidate " + candidate.id + " already registered");
  }
  for (const auto& parent : candidate.parent_ids) {
    if (candidates_.count(parent) == 0) {
      throw Error(ErrorCode::UnknownPrompt,
                  "parent " + parent + " of " + candidate.id + " is not registered");
    }
  }
  for (auto& record : records) {
    record.prompt_id = candidate.id;
    records_.add(std::move(record));
  }
  candidates_.emplace(candidate.id, std::move(candidate));
}

const PromptCandidate& Registry::candidate(const std::string& id) const {
  auto it = candidates_.find(id);
  if (it == candidates_.end()) throw Error(ErrorCode::UnknownPrompt, id);
  return it->second;
}

std::vector<std::string> Registry::ids() const {
  std::vector<std::string> out;
  out.reserve(candidates_.size());
  for (const auto& [id, _] : candidates_) out.push_back(id);
  return out;
}

OptimizeResult optimize_loop(const OptimizeContext& context, Registry& registry,
                             const std::vector<PatentRecord>& corpus, int rounds) {
  if (registry.candidates().size() < 2) {
    throw Error(ErrorCode::Precondition,
                "optimize_loop needs at least 2 registered candidates");
  }
  for (const auto& id : registry.ids()) {
    if (!registry.records().complete_for(id, corpus)) {
      throw Error(ErrorCode::MissingRecords,
                  id + " lacks generation records for the full corpus");
    }
  }

  const auto say = [&](const std::string& message) {
    if (context.log) context.log(message);
  };

  const auto full_tournament = [&](RatingTable& table) {
    TournamentContext tournament;
    tournament.judge = context.judge;
    tournament.records = &registry.records();
    tournament.limits = context.limits;
    tournament.judge_options = context.judge_options;
    tournament.seed = context.seed;
    tournament.parallelism = context.parallelism;
    auto matches = run_tournament(tournament, registry.ids(), corpus, table);
    if (context.on_tournament) context.on_tournament(matches);
  };

  OptimizeResult result;
  result.table = RatingTable(context.initial_rating, context.k_factor);
  full_tournament(result.table);

  for (int round = 1; round <= rounds; ++round) {
    result.rounds_run = round;
    const auto ranked = rank(result.table);
    const PromptCandidate champion = registry.candidate(ranked.front().prompt_id);

    try {
      RefinementContext refinement;
      refinement.champion = champion;
      refinement.sample_cap = context.loser_sample_cap;
      for (std::size_t i = 1; i < ranked.size(); ++i) {
        const auto& loser = registry.candidate(ranked[i].prompt_id);
        std::vector<GenerationRecord> samples;
        if (const auto* per_patent = registry.records().for_prompt(loser.id)) {
          for (const auto& [_, record] : *per_patent) {
            if (static_cast<int>(samples.size()) >= context.loser_sample_cap) break;
            samples.push_back(record);
          }
        }
        refinement.losers.emplace_back(loser, std::move(samples));
      }

      std::vector<std::string> warnings;
      const PromptCandidate challenger = merge_prompt(context.refiner, refinement, &warnings);
      for (const auto& warning : warnings) say("round " + std::to_string(round) + ": " + warning);

      if (registry.contains(challenger.id)) {
        say("round " + std::to_string(round) + ": refiner reproduced candidate " +
            challenger.id + "; stopping");
        result.champion = champion;
        return result;
      }

      GenerationBatch batch =
          generate_set(context.generator, challenger, corpus, context.limits,
                       {context.generate_attempts, context.parallelism});
      if (!batch.ok()) {
        std::string failed;
        for (const auto& failure : batch.failures) failed += " " + failure.patent_id;
        throw Error(ErrorCode::GenerationFailed,
                    "challenger " + challenger.id + " failed on" + failed);
      }
      if (context.on_generation) {
        for (const auto& record : batch.records) context.on_generation(record);
      }

      RecordIndex scratch = registry.records();
      for (const auto& record : batch.records) scratch.add(record);
      const ScreenOutcome screen =
          prescreen(context.prescreen_judge, challenger, champion, corpus, scratch,
                    context.seed, context.limits, context.judge_options,
                    context.parallelism);
      say("round " + std::to_string(round) + ": screen " + challenger.id + " vs " +
          champion.id + " -> " + std::to_string(screen.wins) + "W/" +
          std::to_string(screen.losses) + "L/" + std::to_string(screen.ties) + "T");

      if (!screen.promoted) {
        // The gate is the sole admission path; a stalled round ends the loop.
        result.champion = champion;
        return result;
      }

      registry.admit(challenger, std::move(batch.records));
      ++result.promotions;
      result.table = RatingTable(context.initial_rating, context.k_factor);
      full_tournament(result.table);
    } catch (const Error& e) {
      say("round " + std::to_string(round) + " failed: " + std::string(e.what()));
      continue;  // keep the incumbent, try the next round
    }
  }

  result.champion = registry.candidate(rank(result.table).front().prompt_id);
  return result;
}

}  // namespace ideaforge
