#include "mmrt/attack/engine.hpp"

#include <chrono>
#include <map>
#include <set>

#include "mmrt/corpus/record_store.hpp"
#include "mmrt/errors.hpp"
#include "mmrt/imageops/png_io.hpp"
#include "mmrt/imageops/transforms.hpp"
#include "mmrt/util/hash.hpp"
#include "mmrt/util/ordered_run.hpp"
#include "mmrt/util/time.hpp"

namespace mmrt::attack {

namespace {

using clients::ChatRequest;
using corpus::AttackCase;
using corpus::AttemptRecord;
using corpus::Phase;
using imageops::RasterImage;

constexpr double kJitterBrightness = 0.5;
constexpr double kJitterContrast = 0.5;
constexpr double kBlurSigma = 2.0;
constexpr int kPosterBits = 2;

std::string classify_error(const Error& e) {
  if (dynamic_cast<const CapabilityError*>(&e)) return std::string("CapabilityError: ") + e.what();
  if (dynamic_cast<const TransportError*>(&e)) return std::string("TransportError: ") + e.what();
  if (dynamic_cast<const AuthError*>(&e)) return std::string("AuthError: ") + e.what();
  if (dynamic_cast<const MalformedJudgeOutput*>(&e)) {
    return std::string("MalformedJudgeOutput: ") + e.what();
  }
  return std::string("Error: ") + e.what();
}

AttemptRecord make_record_shell(const AttackCase& c, Phase phase, const CampaignConfig& cfg) {
  AttemptRecord r;
  r.case_id = c.case_id;
  r.category = corpus::to_string(c.category);
  r.model = cfg.model_label;
  r.setting = to_string(cfg.setting);
  r.defense = cfg.defense_label;
  r.phase = phase;
  r.iteration_mode = cfg.all_iterations ? "all" : "last";
  return r;
}

}  // namespace

const char* to_string(PhaseOutcome p) {
  switch (p) {
    case PhaseOutcome::initial: return "initial";
    case PhaseOutcome::reattack: return "reattack";
    case PhaseOutcome::none: return "none";
  }
  return "?";
}

PromptBundle build_prompt_bundle(const AttackCase& c, Recipe recipe, Seed seed) {
  const RasterImage opt_image = imageops::load_png(c.image_paths.back());

  PromptBundle bundle;
  bundle.recipe = recipe;
  switch (recipe) {
    case Recipe::opt:
      bundle.text = promptkit::opt_text(c.text_opt);
      bundle.images = {opt_image};
      break;
    case Recipe::gau:
      bundle.text = promptkit::opt_text(c.text_opt);
      bundle.images = {imageops::gaussian_blur(opt_image, kBlurSigma)};
      break;
    case Recipe::color:
      bundle.text = promptkit::opt_text(c.text_opt);
      bundle.images = {imageops::color_jitter(opt_image, kJitterBrightness, kJitterContrast, seed)};
      break;
    case Recipe::poster:
      bundle.text = promptkit::opt_text(c.text_opt);
      bundle.images = {imageops::posterize(opt_image, kPosterBits)};
      break;
    case Recipe::proposed_text:
      bundle.text = promptkit::build_proposed_text(c.text_opt, c.keyword_type);
      bundle.images = {opt_image};
      break;
    case Recipe::proposed_both:
      bundle.text = promptkit::build_proposed_text(c.text_opt, c.keyword_type);
      bundle.images = {imageops::gaussian_blur(opt_image, kBlurSigma)};
      break;
    case Recipe::multi: {
      auto [left, right] = imageops::split_vertical(opt_image);
      bundle.text = promptkit::build_multi_image_text(c.text_opt);
      bundle.images = {std::move(left), std::move(right)};
      break;
    }
    case Recipe::multi_both: {
      auto [left, right] = imageops::split_vertical(opt_image);
      bundle.text = promptkit::build_multi_both_text(c.text_opt, c.keyword_type);
      bundle.images = {imageops::gaussian_blur(left, kBlurSigma),
                       imageops::gaussian_blur(right, kBlurSigma)};
      break;
    }
  }
  return bundle;
}

corpus::AttemptRecord run_attempt(clients::ModelClient& model, clients::JudgeClient& judge,
                                  const AttackCase& c, const PromptBundle& bundle, Phase phase,
                                  const CampaignConfig& cfg) {
  AttemptRecord record = make_record_shell(c, phase, cfg);
  record.timestamp = utc_now();
  try {
    promptkit::TextPrompt text = bundle.text;
    if (cfg.defense_wrap) text = cfg.defense_wrap(text, c);
    record.prompt_text_hash = hash_hex(text.text);
    for (const auto& img : bundle.images) record.image_hashes.push_back(imageops::image_hash(img));

    ChatRequest req;
    req.text = std::move(text);
    req.images = bundle.images;
    req.temperature = cfg.temperature;
    req.max_tokens = cfg.max_tokens;

    const auto t0 = std::chrono::steady_clock::now();
    record.response_text = model.complete(req);
    record.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    record.verdict = judge.judge(record.response_text).harmful;
  } catch (const Error& e) {
    record.error = classify_error(e);
    record.verdict = false;
  }
  return record;
}

namespace {

// Executes one phase end to end; bundle-build problems (TooNarrow on a
// degenerate image, an unreadable file) count as an infeasible attempt, the
// same as client errors.
AttemptRecord run_phase(clients::ModelClient& model, clients::JudgeClient& judge,
                        const AttackCase& c, Recipe recipe, Phase phase,
                        const CampaignConfig& cfg) {
  PromptBundle bundle;
  try {
    bundle = build_prompt_bundle(c, recipe, derive_seed(Seed{cfg.seed}, fnv1a64(c.case_id)));
  } catch (const Error& e) {
    AttemptRecord record = make_record_shell(c, phase, cfg);
    record.timestamp = utc_now();
    record.error = classify_error(e);
    return record;
  }
  return run_attempt(model, judge, c, bundle, phase, cfg);
}

}  // namespace

AttemptOutcome run_single(clients::ModelClient& model, clients::JudgeClient& judge,
                          const AttackCase& c, const CampaignConfig& cfg) {
  AttemptOutcome outcome;
  outcome.case_id = c.case_id;
  auto record = run_phase(model, judge, c, initial_recipe(cfg.setting), Phase::initial, cfg);
  outcome.success = record.verdict;
  outcome.phase_succeeded = record.verdict ? PhaseOutcome::initial : PhaseOutcome::none;
  outcome.records.push_back(std::move(record));
  return outcome;
}

AttemptOutcome run_reattack(clients::ModelClient& model, clients::JudgeClient& judge,
                            const AttackCase& c, const CampaignConfig& cfg) {
  AttemptOutcome outcome;
  outcome.case_id = c.case_id;

  auto first = run_phase(model, judge, c, initial_recipe(cfg.setting), Phase::initial, cfg);
  const bool first_success = first.verdict;
  outcome.records.push_back(std::move(first));
  if (first_success) {
    // Fig-3 early exit: the retry is never assembled, let alone sent.
    outcome.success = true;
    outcome.phase_succeeded = PhaseOutcome::initial;
    return outcome;
  }

  const auto retry = retry_recipe(cfg.setting, model.max_images());
  auto second = run_phase(model, judge, c, *retry, Phase::reattack, cfg);
  outcome.success = second.verdict;
  outcome.phase_succeeded = second.verdict ? PhaseOutcome::reattack : PhaseOutcome::none;
  outcome.records.push_back(std::move(second));
  return outcome;
}

std::vector<AttackCase> expand_iterations(const std::vector<AttackCase>& cases) {
  std::vector<AttackCase> out;
  for (const auto& c : cases) {
    for (std::size_t k = 0; k < c.image_paths.size(); ++k) {
      AttackCase e = c;
      e.case_id = c.case_id + "#it" + std::to_string(k);
      e.image_paths = {c.image_paths[k]};
      out.push_back(std::move(e));
    }
  }
  return out;
}

namespace {

AttemptOutcome outcome_from_records(const std::string& case_id,
                                    std::vector<AttemptRecord> records) {
  AttemptOutcome outcome;
  outcome.case_id = case_id;
  for (const auto& r : records) {
    if (r.verdict) {
      outcome.success = true;
      outcome.phase_succeeded =
          r.phase == Phase::initial ? PhaseOutcome::initial : PhaseOutcome::reattack;
    }
  }
  outcome.records = std::move(records);
  return outcome;
}

}  // namespace

CampaignResult run_campaign(clients::ModelClient& model, clients::JudgeClient& judge,
                            const std::vector<AttackCase>& cases, const CampaignConfig& cfg) {
  if (cases.empty()) throw EmptyGroup("campaign over zero cases");

  const std::vector<AttackCase> work = cfg.all_iterations ? expand_iterations(cases) : cases;
  const std::string setting_name = to_string(cfg.setting);

  // Resume: a case whose records are already in the store is not re-queried.
  std::set<std::string> done;
  std::map<std::string, std::vector<AttemptRecord>> persisted;
  if (!cfg.store_path.empty()) {
    for (auto& r : corpus::read_records_if_exists(cfg.store_path)) {
      if (r.setting == setting_name && r.model == cfg.model_label &&
          r.defense == cfg.defense_label) {
        done.insert(r.case_id);
        persisted[r.case_id].push_back(std::move(r));
      }
    }
  }

  struct Slot {
    AttemptOutcome outcome;
    bool is_new = false;
  };

  // Commits run in case order, so the store and the outcome list are
  // deterministic under any parallelism. Each newly executed case is appended
  // as one batch, which keeps resume per-case atomic.
  CampaignResult result;
  ordered_run<Slot>(
      work.size(), cfg.parallelism,
      [&](std::size_t i) {
        const AttackCase& c = work[i];
        if (done.count(c.case_id)) {
          return Slot{outcome_from_records(c.case_id, persisted.at(c.case_id)), false};
        }
        return Slot{is_reattack(cfg.setting) ? run_reattack(model, judge, c, cfg)
                                             : run_single(model, judge, c, cfg),
                    true};
      },
      [&](std::size_t, Slot&& slot) {
        if (slot.is_new && !cfg.store_path.empty()) {
          corpus::append_records(cfg.store_path, slot.outcome.records);
        }
        (slot.is_new ? result.new_cases : result.skipped_cases) += 1;
        result.outcomes.push_back(std::move(slot.outcome));
      });
  return result;
}

}  // namespace mmrt::attack
