#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mmrt/attack/settings.hpp"
#include "mmrt/clients/judge.hpp"
#include "mmrt/clients/model_client.hpp"
#include "mmrt/corpus/types.hpp"
#include "mmrt/util/rng.hpp"

namespace mmrt::attack {

struct PromptBundle {
  promptkit::TextPrompt text;
  std::vector<imageops::RasterImage> images;
  Recipe recipe = Recipe::opt;
};

// Assembles the (text, images) pair for one case under a recipe. The image
// prompt is the case's last (highest-iteration) image; multi recipes return
// exactly two images, left half first. Deterministic for (case, recipe, seed).
PromptBundle build_prompt_bundle(const corpus::AttackCase& c, Recipe recipe, Seed seed);

enum class PhaseOutcome { initial, reattack, none };

const char* to_string(PhaseOutcome p);

struct AttemptOutcome {
  std::string case_id;
  bool success = false;
  PhaseOutcome phase_succeeded = PhaseOutcome::none;
  std::vector<corpus::AttemptRecord> records;  // 1 for single-shot, up to 2 for reattack
};

// Rewrites the outgoing prompt, e.g. an AdaShield wrap. Applied to every
// phase of every case.
using DefenseWrap =
    std::function<promptkit::TextPrompt(const promptkit::TextPrompt&, const corpus::AttackCase&)>;

struct CampaignConfig {
  AttackSetting setting = AttackSetting::opt_image;
  std::uint64_t seed = 0;
  int parallelism = 1;
  std::string store_path;  // "" = do not persist
  std::string model_label;
  std::string defense_label;       // "" when undefended
  bool all_iterations = false;     // expand each case into one attempt per image prompt
  double temperature = 0.0;
  int max_tokens = 1024;
  DefenseWrap defense_wrap;        // optional
};

// One query + one judge verdict. Client and judge failures never propagate:
// they are captured in the record's error field with verdict=false.
corpus::AttemptRecord run_attempt(clients::ModelClient& model, clients::JudgeClient& judge,
                                  const corpus::AttackCase& c, const PromptBundle& bundle,
                                  corpus::Phase phase, const CampaignConfig& cfg);

// The two-phase strategy: baseline prompts first; on judged failure the
// setting's retry recipe fires once. A phase-1 success never issues a retry.
AttemptOutcome run_reattack(clients::ModelClient& model, clients::JudgeClient& judge,
                            const corpus::AttackCase& c, const CampaignConfig& cfg);

// Single-phase settings.
AttemptOutcome run_single(clients::ModelClient& model, clients::JudgeClient& judge,
                          const corpus::AttackCase& c, const CampaignConfig& cfg);

struct CampaignResult {
  std::vector<AttemptOutcome> outcomes;  // case order
  int new_cases = 0;
  int skipped_cases = 0;
};

// Runs the whole corpus under one setting. Cases execute concurrently up to
// cfg.parallelism; outcomes and persisted records follow case order. Cases
// whose (case_id, setting, model, defense) already sit in the store are
// skipped and their outcome is rebuilt from the persisted records. Aborts
// only on store IoFailure.
CampaignResult run_campaign(clients::ModelClient& model, clients::JudgeClient& judge,
                            const std::vector<corpus::AttackCase>& cases,
                            const CampaignConfig& cfg);

// When all_iterations is on, every image prompt of a case becomes its own
// attempt, matching the per-iteration denominators of the corpus counts.
std::vector<corpus::AttackCase> expand_iterations(const std::vector<corpus::AttackCase>& cases);

}  // namespace mmrt::attack
