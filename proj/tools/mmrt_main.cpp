#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmrt/attack/asr.hpp"
#include "mmrt/attack/engine.hpp"
#include "mmrt/config.hpp"
#include "mmrt/corpus/manifest.hpp"
#include "mmrt/corpus/record_store.hpp"
#include "mmrt/defense/adashield.hpp"
#include "mmrt/defense/jailguard.hpp"
#include "mmrt/errors.hpp"
#include "mmrt/imageops/png_io.hpp"
#include "mmrt/report/table.hpp"
#include "mmrt/util/hash.hpp"
#include "mmrt/util/ordered_run.hpp"
#include "mmrt/util/rng.hpp"
#include "mmrt/util/time.hpp"

namespace {

using namespace mmrt;

constexpr int kExitOk = 0;
constexpr int kExitInfra = 1;   // endpoint / IO trouble
constexpr int kExitConfig = 2;  // bad usage or configuration

struct CommonOpts {
  std::string config_path;
  std::optional<std::string> setting;
  std::optional<std::uint64_t> seed;
  std::optional<int> parallelism;
  std::optional<std::string> store;
  std::string format = "text";
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_config = true) {
  auto* c = cmd->add_option("--config", opts.config_path, "campaign configuration file");
  if (needs_config) c->required();
  cmd->add_option("--setting", opts.setting, "attack setting override");
  cmd->add_option("--seed", opts.seed, "seed override");
  cmd->add_option("--parallelism", opts.parallelism, "worker count override");
  cmd->add_option("--store", opts.store, "attempt store override");
  cmd->add_option("--format", opts.format, "table format: text or csv")
      ->check(CLI::IsMember({"text", "csv"}));
}

RunConfig load_with_overrides(const CommonOpts& opts) {
  RunConfig cfg = load_run_config(opts.config_path);
  if (opts.setting) {
    const auto s = attack::setting_from_string(*opts.setting);
    if (!s) throw ConfigError("unknown setting: " + *opts.setting);
    cfg.setting = *s;
  }
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.parallelism) cfg.parallelism = *opts.parallelism;
  if (opts.store) cfg.store = *opts.store;
  return cfg;
}

attack::CampaignConfig campaign_config(const RunConfig& cfg, const std::string& defense_label) {
  attack::CampaignConfig cc;
  cc.setting = cfg.setting;
  cc.seed = cfg.seed;
  cc.parallelism = cfg.parallelism;
  cc.store_path = cfg.store;
  cc.model_label = cfg.model.label;
  cc.defense_label = defense_label;
  cc.all_iterations = cfg.all_iterations;
  if (cfg.model.kind == "http") {
    cc.temperature = cfg.model.http.temperature;
    cc.max_tokens = cfg.model.http.max_tokens;
  }
  return cc;
}

void print_table(const report::ReportTable& table, const std::string& format, std::ostream& out) {
  out << (format == "csv" ? report::render_csv(table) : report::render_text(table));
}

// The table always re-derives from persisted records when a store is in play,
// so every printed number stays auditable.
std::vector<corpus::AttemptRecord> records_for_report(const RunConfig& cfg,
                                                      const attack::CampaignResult& result) {
  if (!cfg.store.empty()) return corpus::read_records(cfg.store);
  std::vector<corpus::AttemptRecord> records;
  for (const auto& o : result.outcomes) {
    records.insert(records.end(), o.records.begin(), o.records.end());
  }
  return records;
}

int cmd_ingest_check(const CommonOpts& opts) {
  const RunConfig cfg = load_with_overrides(opts);
  if (cfg.attack_manifest.empty() && cfg.benign_manifest.empty()) {
    throw ConfigError("config names no attack_manifest or benign_manifest");
  }
  if (!cfg.attack_manifest.empty()) {
    const auto corpus = corpus::load_attack_corpus(cfg.attack_manifest);
    std::cout << "attack corpus: " << corpus.cases.size() << " case(s)\n";
    for (const auto& [cat, n] : corpus.category_counts) {
      std::cout << "  " << corpus::to_string(cat) << ": " << n << "\n";
    }
    for (const auto& d : corpus.diagnostics) std::cout << "  skipped: " << d << "\n";
  }
  if (!cfg.benign_manifest.empty()) {
    const auto benign = corpus::load_benign_corpus(cfg.benign_manifest);
    std::cout << "benign corpus: " << benign.cases.size() << " case(s)\n";
    for (const auto& d : benign.diagnostics) std::cout << "  skipped: " << d << "\n";
  }
  return kExitOk;
}

int cmd_attack(const CommonOpts& opts) {
  const RunConfig cfg = load_with_overrides(opts);
  if (cfg.attack_manifest.empty()) throw ConfigError("attack_manifest is required");
  const auto corpus = corpus::load_attack_corpus(cfg.attack_manifest);
  if (corpus.cases.empty()) throw EmptyCorpus("no valid attack cases");

  auto model = make_model(cfg.model);
  auto judge = make_judge(cfg.judge);
  const auto cc = campaign_config(cfg, "");
  const auto result = attack::run_campaign(*model, *judge, corpus.cases, cc);

  std::cout << result.new_cases << " new attempt(s), " << result.skipped_cases
            << " skipped (already in store)\n";
  std::cout << "image-prompt denominator: " << (cfg.all_iterations ? "all iterations" : "last iteration")
            << "\n";
  print_table(report::build_asr_table(records_for_report(cfg, result)), opts.format, std::cout);
  return kExitOk;
}

attack::Recipe detection_recipe(attack::AttackSetting setting, int max_images) {
  if (attack::is_reattack(setting)) {
    // The setting's distinctive prompt is the retry recipe.
    return *attack::retry_recipe(setting, max_images);
  }
  return attack::initial_recipe(setting);
}

int cmd_defend(const CommonOpts& opts) {
  const RunConfig cfg = load_with_overrides(opts);
  if (!cfg.defense) throw ConfigError("defend needs a defense block in the config");
  if (cfg.attack_manifest.empty()) throw ConfigError("attack_manifest is required");
  const auto corpus = corpus::load_attack_corpus(cfg.attack_manifest);
  if (corpus.cases.empty()) throw EmptyCorpus("no valid attack cases");

  auto model = make_model(cfg.model);
  auto judge = make_judge(cfg.judge);
  DefenseSpec spec = *cfg.defense;

  if (spec.config.kind == defense::DefenseKind::jailguard) {
    const std::string store =
        cfg.detection_store.empty() ? cfg.store + ".detections" : cfg.detection_store;
    if (cfg.store.empty() && cfg.detection_store.empty()) {
      throw ConfigError("jailguard defend needs a store or detection_store path");
    }

    // Resume keys include theta: a recalibrated rerun re-detects everything.
    std::set<std::string> done;
    for (const auto& r : defense::read_detections_if_exists(store)) {
      if (r.model == cfg.model.label && r.setting == to_string(cfg.setting) &&
          r.theta == spec.config.threshold) {
        done.insert(r.case_id);
      }
    }

    auto detect_case = [&](const std::string& case_id, const std::string& category,
                           const promptkit::TextPrompt& text,
                           const std::vector<imageops::RasterImage>& images) {
      defense::DetectionRecord rec;
      rec.case_id = case_id;
      rec.category = category;
      rec.model = cfg.model.label;
      rec.setting = to_string(cfg.setting);
      rec.theta = spec.config.threshold;
      rec.timestamp = utc_now();
      try {
        const auto report = defense::measure_divergence(
            *model, spec.config.policy, text, images, derive_seed(Seed{cfg.seed}, fnv1a64(case_id)));
        rec.max_divergence = report.max_divergence;
        rec.variants_used = static_cast<int>(report.pairwise.size());
        rec.flagged = report.max_divergence > spec.config.threshold;
      } catch (const Error& e) {
        rec.error = e.what();
      }
      return rec;
    };

    int fresh = 0;
    ordered_run<defense::DetectionRecord>(
        corpus.cases.size(), cfg.parallelism,
        [&](std::size_t i) {
          const auto& c = corpus.cases[i];
          if (done.count(c.case_id)) return defense::DetectionRecord{};  // sentinel, skipped
          const auto bundle = attack::build_prompt_bundle(
              c, detection_recipe(cfg.setting, model->max_images()),
              derive_seed(Seed{cfg.seed}, fnv1a64(c.case_id)));
          return detect_case(c.case_id, corpus::to_string(c.category), bundle.text, bundle.images);
        },
        [&](std::size_t, defense::DetectionRecord&& rec) {
          if (rec.case_id.empty()) return;
          defense::append_detections(store, {rec});
          ++fresh;
        });

    if (!cfg.benign_manifest.empty()) {
      const auto benign = corpus::load_benign_corpus(cfg.benign_manifest);
      ordered_run<defense::DetectionRecord>(
          benign.cases.size(), cfg.parallelism,
          [&](std::size_t i) {
            const auto& c = benign.cases[i];
            if (done.count(c.case_id)) return defense::DetectionRecord{};
            const auto image = imageops::load_png(c.image_path);
            return detect_case(c.case_id, "", {c.text, promptkit::Provenance::opt}, {image});
          },
          [&](std::size_t, defense::DetectionRecord&& rec) {
            if (rec.case_id.empty()) return;
            defense::append_detections(store, {rec});
            ++fresh;
          });
    }

    std::cout << fresh << " new detection(s), theta = " << spec.config.threshold << "\n";
    const auto detections = defense::read_detections(store);
    print_table(report::build_recall_table(detections), opts.format, std::cout);
    print_table(report::build_frr_table(detections), opts.format, std::cout);
    return kExitOk;
  }

  // AdaShield kinds: a defended campaign. Train the adaptive pool when it is
  // empty and a defender endpoint is available.
  if (spec.config.kind == defense::DefenseKind::adashield_a && spec.config.pool.empty()) {
    if (!cfg.defender) {
      throw ConfigError("adashield_a has no pool and no defender endpoint to train one");
    }
    auto defender = make_model(*cfg.defender);
    defense::TrainOptions train;
    train.max_rounds = spec.max_rounds;
    train.ordering = spec.config.ordering;
    train.defender_template = spec.defender_template;
    std::vector<corpus::AttackCase> fewshot(corpus.cases.begin(),
                                            corpus.cases.begin() +
                                                std::min<std::size_t>(16, corpus.cases.size()));
    spec.config.pool = defense::adashield_train(*defender, *model, *judge, fewshot, train);
    std::cout << "trained pool: " << spec.config.pool.size() << " prompt(s)\n";
    if (spec.config.pool.empty()) {
      std::cout << "warning: no defense prompt was accepted; inference would fail\n";
      return kExitInfra;
    }
    if (!spec.pool_path.empty()) defense::save_pool(spec.pool_path, spec.config.pool);
  }

  const std::string defense_label =
      std::string(defense::to_string(spec.config.kind)) + ":" + to_string(spec.config.ordering);
  auto cc = campaign_config(cfg, defense_label);
  const defense::DefenseConfig defense_cfg = spec.config;
  cc.defense_wrap = [defense_cfg](const promptkit::TextPrompt& prompt,
                                  const corpus::AttackCase&) {
    return defense::adashield_apply(defense_cfg, prompt, prompt.text);
  };

  const auto result = attack::run_campaign(*model, *judge, corpus.cases, cc);
  std::cout << result.new_cases << " new attempt(s), " << result.skipped_cases << " skipped\n";
  print_table(report::build_asr_table(records_for_report(cfg, result), "no-defense"), opts.format,
              std::cout);
  return kExitOk;
}

int cmd_calibrate(const CommonOpts& opts, const std::string& out_path) {
  const RunConfig cfg = load_with_overrides(opts);
  if (cfg.benign_manifest.empty()) throw ConfigError("calibrate needs a benign_manifest");
  const auto benign = corpus::load_benign_corpus(cfg.benign_manifest);

  defense::JailguardPolicy policy;
  double allowance = 0.05;
  if (cfg.defense) {
    policy = cfg.defense->config.policy;
    allowance = cfg.defense->allowance;
  }

  auto model = make_model(cfg.model);
  const auto cal = defense::calibrate_threshold(*model, policy, benign.cases, allowance,
                                                Seed{cfg.seed}, cfg.parallelism);

  double lo = cal.dev_scores.front(), hi = cal.dev_scores.front(), sum = 0.0;
  for (double s : cal.dev_scores) {
    lo = std::min(lo, s);
    hi = std::max(hi, s);
    sum += s;
  }
  std::cout << "dev scores: n=" << cal.dev_scores.size() << " min=" << lo << " max=" << hi
            << " mean=" << sum / cal.dev_scores.size() << "\n";
  std::cout << "allowance: " << cal.allowance << "\n";
  std::cout << "chosen theta: " << cal.chosen_theta << "\n";

  nlohmann::json out{{"kind", "jailguard"},
                     {"ordering", "defense_first"},
                     {"threshold", cal.chosen_theta},
                     {"allowance", cal.allowance},
                     {"policy",
                      {{"n_variants", policy.n_variants},
                       {"probs", {policy.probs[0], policy.probs[1], policy.probs[2]}},
                       {"max_deg", policy.max_deg},
                       {"sigma", policy.sigma},
                       {"bits", policy.bits}}},
                     {"calibration",
                      {{"model", cfg.model.label}, {"dev_scores", cal.dev_scores}}}};
  std::ofstream f(out_path, std::ios::trunc);
  if (!f) throw IoFailure("cannot write defense config: " + out_path);
  f << out.dump(2) << "\n";
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_report(const std::vector<std::string>& stores, const std::vector<std::string>& detections,
               const std::string& baseline, const std::string& format,
               const std::string& csv_out) {
  std::vector<corpus::AttemptRecord> records;
  std::vector<std::string> problems;
  for (const auto& path : stores) {
    const auto part = corpus::read_records_lenient(path, problems);
    records.insert(records.end(), part.begin(), part.end());
  }
  std::string rendered;
  if (!records.empty() || !stores.empty()) {
    auto table = report::build_asr_table(records, baseline);
    for (const auto& p : problems) table.notices.push_back(p);
    rendered += format == "csv" ? report::render_csv(table) : report::render_text(table);
  }
  std::vector<defense::DetectionRecord> dets;
  for (const auto& path : detections) {
    const auto part = defense::read_detections(path);
    dets.insert(dets.end(), part.begin(), part.end());
  }
  if (!dets.empty()) {
    const auto recall = report::build_recall_table(dets);
    const auto frr = report::build_frr_table(dets);
    rendered += format == "csv" ? report::render_csv(recall) : report::render_text(recall);
    rendered += format == "csv" ? report::render_csv(frr) : report::render_text(frr);
  }
  std::cout << rendered;
  if (!csv_out.empty()) {
    std::ofstream f(csv_out, std::ios::trunc | std::ios::binary);
    if (!f) throw IoFailure("cannot write: " + csv_out);
    f << rendered;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mmrt: black-box multimodal jailbreak red-teaming harness"};
  app.require_subcommand(1);

  CommonOpts ingest_opts, attack_opts, defend_opts, calibrate_opts;
  std::string calibrate_out = "jailguard_defense.json";
  std::vector<std::string> report_stores, report_detections;
  std::string report_baseline, report_format = "text", report_csv_out;

  auto* ingest = app.add_subcommand("ingest-check", "validate corpora and print counts");
  add_common(ingest, ingest_opts);

  auto* attackc = app.add_subcommand("attack", "run an attack campaign and print ASR");
  add_common(attackc, attack_opts);

  auto* defend = app.add_subcommand("defend", "run a defended campaign or JailGuard detection");
  add_common(defend, defend_opts);

  auto* calibrate = app.add_subcommand("calibrate", "pick the JailGuard threshold from benign few-shot data");
  add_common(calibrate, calibrate_opts);
  calibrate->add_option("--out", calibrate_out, "output defense config path");

  auto* reportc = app.add_subcommand("report", "render tables from persisted stores");
  reportc->add_option("--store", report_stores, "attempt store path(s)");
  reportc->add_option("--detections", report_detections, "detection store path(s)");
  reportc->add_option("--baseline", report_baseline,
                      "baseline row: a setting name, or 'no-defense'");
  reportc->add_option("--format", report_format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}));
  reportc->add_option("--out", report_csv_out, "also write rendered output to a file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingest->parsed()) return cmd_ingest_check(ingest_opts);
    if (attackc->parsed()) return cmd_attack(attack_opts);
    if (defend->parsed()) return cmd_defend(defend_opts);
    if (calibrate->parsed()) return cmd_calibrate(calibrate_opts, calibrate_out);
    if (reportc->parsed()) {
      return cmd_report(report_stores, report_detections, report_baseline, report_format,
                        report_csv_out);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const EmptyCorpus& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfra;
  }
  return kExitConfig;
}
