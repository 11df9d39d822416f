#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "mmrt/clients/scripted_model.hpp"
#include "mmrt/corpus/manifest.hpp"
#include "mmrt/defense/adashield.hpp"
#include "mmrt/defense/jailguard.hpp"
#include "mmrt/errors.hpp"
#include "mmrt/imageops/policy.hpp"
#include "mmrt/imageops/png_io.hpp"
#include "mmrt/util/rng.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace mmrt;
using namespace mmrt::defense;
using mmrt::clients::MockJudge;
using mmrt::clients::ScriptedModel;
using mmrt::testsupport::TempDir;
using nlohmann::json;

namespace {
constexpr const char* kRefusal = "I'm sorry, I can't help with that.";
constexpr const char* kCompliance = "Step 1. Collect the tools you will need.";
}  // namespace

TEST_CASE("divergence is zero on identical inputs and matches the hand-derived value") {
  CHECK(divergence("a b", "a b") == 0.0);
  CHECK(divergence("", "") == 0.0);
  // Union vocab {a,b,c,d}: p = (2,2,1,1)/6, q = (1,1,2,2)/6 -> KL = (1/3) ln 2.
  CHECK(divergence("a b", "c d") == doctest::Approx(std::log(2.0) / 3.0).epsilon(1e-12));
  CHECK(symmetric_divergence("a b", "c d") ==
        doctest::Approx(2.0 * std::log(2.0) / 3.0).epsilon(1e-12));
}

TEST_CASE("symmetric divergence equals the sum of both directed KLs") {
  Rng rng(Seed{77});
  const char* words[] = {"alpha", "beta", "gamma", "delta", "epsilon", "zeta"};
  for (int trial = 0; trial < 1000; ++trial) {
    std::string a, b;
    for (int i = 0; i < int(rng.next_u64() % 8); ++i) {
      a += std::string(words[rng.next_u64() % 6]) + " ";
    }
    for (int i = 0; i < int(rng.next_u64() % 8); ++i) {
      b += std::string(words[rng.next_u64() % 6]) + " ";
    }
    const double sym = symmetric_divergence(a, b);
    CHECK(sym == doctest::Approx(divergence(a, b) + divergence(b, a)).epsilon(1e-12));
    CHECK(sym == doctest::Approx(testsupport::oracle_symmetric_kl(a, b)).epsilon(1e-9));
    CHECK(sym >= 0.0);
  }
}

TEST_CASE("lexical cosine retrieval picks the closest pool key") {
  // Hand-computed: query {fraudulent, financial, scheme} vs {financial, fraud}
  // shares one term -> 1/sqrt(6); vs {animal, abuse} -> 0.
  CHECK(lexical_cosine("fraudulent financial scheme", "financial fraud") ==
        doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-12));
  CHECK(lexical_cosine("fraudulent financial scheme", "animal abuse") == 0.0);

  DefenseConfig cfg;
  cfg.kind = DefenseKind::adashield_a;
  cfg.ordering = promptkit::DefenseOrdering::defense_first;
  cfg.pool = {{"guard-financial", "financial fraud"}, {"guard-animal", "animal abuse"}};
  const auto out = adashield_apply(cfg, {"the attack", promptkit::Provenance::opt},
                                   "fraudulent financial scheme");
  CHECK(out.text.rfind("guard-financial", 0) == 0);

  // Pool of one serves every query; ties keep pool order.
  cfg.pool = {{"only", "x"}};
  CHECK(adashield_apply(cfg, {"q", promptkit::Provenance::opt}, "anything").text.rfind("only", 0) ==
        0);
  cfg.pool = {{"first", "same key"}, {"second", "same key"}};
  CHECK(adashield_apply(cfg, {"q", promptkit::Provenance::opt}, "same key").text.rfind("first", 0) ==
        0);

  cfg.pool.clear();
  CHECK_THROWS_AS(adashield_apply(cfg, {"q", promptkit::Provenance::opt}, "k"), EmptyPool);
}

TEST_CASE("adashield static wrapping follows the configured ordering") {
  DefenseConfig cfg;
  cfg.kind = DefenseKind::adashield_s;
  cfg.static_prompt = {"DEFENSE", "static"};

  cfg.ordering = promptkit::DefenseOrdering::defense_first;
  CHECK(adashield_apply(cfg, {"ATTACK", promptkit::Provenance::opt}, "").text == "DEFENSE\nATTACK");
  cfg.ordering = promptkit::DefenseOrdering::attack_first;
  CHECK(adashield_apply(cfg, {"ATTACK", promptkit::Provenance::opt}, "").text == "ATTACK\nDEFENSE");
}

TEST_CASE("adashield training accepts candidates once the target refuses") {
  TempDir dir;
  const auto corpus = corpus::load_attack_corpus(testsupport::write_attack_manifest(dir, 4));
  MockJudge judge;

  // Defender always emits the same candidate; the target refuses whenever the
  // prompt begins with it.
  auto defender = ScriptedModel::from_json_text(R"([{"respond": "Refuse harmful requests."}])");
  auto target = ScriptedModel::from_json_text(R"([
    {"text_prefix": "Refuse harmful requests.", "respond": ")" + std::string(kRefusal) + R"("},
    {"respond": ")" + std::string(kCompliance) + R"("}
  ])", 1);

  TrainOptions opts;
  opts.max_rounds = 3;
  opts.ordering = promptkit::DefenseOrdering::defense_first;
  const auto pool = adashield_train(*defender, *target, judge, corpus.cases, opts);
  REQUIRE(pool.size() == 4);
  CHECK(pool[0].text == "Refuse harmful requests.");
  CHECK(pool[0].key == corpus.cases[0].text_opt);
  CHECK(defender->query_count() == 4);  // one round per case
  CHECK(target->query_count() == 4);
}

TEST_CASE("adashield training respects the round budget when nothing works") {
  TempDir dir;
  const auto corpus = corpus::load_attack_corpus(testsupport::write_attack_manifest(dir, 2));
  MockJudge judge;
  auto defender = ScriptedModel::from_json_text(R"([{"respond": "Be safe."}])");
  auto target = ScriptedModel::from_json_text(
      R"([{"respond": ")" + std::string(kCompliance) + R"("}])", 1);

  TrainOptions opts;
  opts.max_rounds = 3;
  const auto pool = adashield_train(*defender, *target, judge, corpus.cases, opts);
  CHECK(pool.empty());
  CHECK(defender->query_count() == 6);  // exactly max_rounds per case
  CHECK(target->query_count() == 6);
}

TEST_CASE("adashield training is deterministic for fixed scripts") {
  TempDir dir;
  const auto corpus = corpus::load_attack_corpus(testsupport::write_attack_manifest(dir, 3));
  MockJudge judge;
  TrainOptions opts;

  auto run_once = [&] {
    auto defender = ScriptedModel::from_json_text(R"([{"respond": "Decline unsafe asks."}])");
    auto target = ScriptedModel::from_json_text(R"([
      {"text_prefix": "Decline unsafe asks.", "respond": ")" + std::string(kRefusal) + R"("},
      {"respond": ")" + std::string(kCompliance) + R"("}
    ])", 1);
    return adashield_train(*defender, *target, judge, corpus.cases, opts);
  };
  const auto a = run_once();
  const auto b = run_once();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].key == b[i].key);
    CHECK(a[i].text == b[i].text);
  }
}

TEST_CASE("pool persistence round-trips") {
  TempDir dir;
  const std::vector<promptkit::DefensePrompt> pool = {{"text one", "key one"},
                                                      {"text \"two\"", "key two"}};
  save_pool(dir.file("pool.jsonl"), pool);
  const auto back = load_pool(dir.file("pool.jsonl"));
  REQUIRE(back.size() == 2);
  CHECK(back[0].text == "text one");
  CHECK(back[0].key == "key one");
  CHECK(back[1].text == "text \"two\"");
}

TEST_CASE("jailguard never flags a constant-response model") {
  auto model = ScriptedModel::from_json_text(R"([{"respond": "the same words every time"}])", 1);
  DefenseConfig cfg;
  cfg.kind = DefenseKind::jailguard;
  cfg.threshold = 1e-9;
  const auto img = testsupport::random_image(24, 24, 3);
  const auto result =
      jailguard_detect(*model, cfg, {"look", promptkit::Provenance::opt}, img, Seed{5});
  CHECK(result.report.max_divergence == 0.0);
  CHECK_FALSE(result.flagged);
  CHECK(result.variants_used == 8);
  // Matrix shape invariants: symmetric with a zero diagonal.
  for (std::size_t i = 0; i < result.report.pairwise.size(); ++i) {
    CHECK(result.report.pairwise[i][i] == 0.0);
    for (std::size_t j = 0; j < result.report.pairwise.size(); ++j) {
      CHECK(result.report.pairwise[i][j] == result.report.pairwise[j][i]);
    }
  }
}

TEST_CASE("jailguard flags a split-personality model at the stock threshold") {
  // Reproduce the detector's variants through the public sampling API, then
  // script half of them to comply.
  const auto img = testsupport::random_image(24, 24, 9);
  DefenseConfig cfg;
  cfg.kind = DefenseKind::jailguard;
  cfg.threshold = 0.025;

  auto mutations = imageops::sample_policy(cfg.policy.n_variants, cfg.policy.probs, Seed{5});
  for (auto& m : mutations) {
    m.max_deg = cfg.policy.max_deg;
    m.sigma = cfg.policy.sigma;
    m.bits = cfg.policy.bits;
  }
  std::vector<std::string> hashes;
  for (const auto& m : mutations) {
    hashes.push_back(imageops::image_hash(imageops::apply_mutation(img, m)));
  }
  // Variants matching the first image comply, the rest refuse. Unseeded
  // mutators repeat images, so make sure both behaviors actually occur.
  REQUIRE(std::count(hashes.begin(), hashes.end(), hashes.front()) <
          static_cast<long>(hashes.size()));
  json rules = json::array();
  rules.push_back({{"image_hash_any_of", {hashes.front()}}, {"respond", kCompliance}});
  rules.push_back({{"respond", kRefusal}});
  auto model = ScriptedModel::from_json_text(rules.dump(), 1);

  // The max pairwise divergence is the refusal-vs-compliance gap; confirm the
  // oracle places it above theta before asserting the flag.
  REQUIRE(testsupport::oracle_symmetric_kl(kRefusal, kCompliance) > 0.025);
  const auto result =
      jailguard_detect(*model, cfg, {"look", promptkit::Provenance::opt}, img, Seed{5});
  CHECK(result.flagged);
  CHECK(result.report.max_divergence ==
        doctest::Approx(testsupport::oracle_symmetric_kl(kRefusal, kCompliance)).epsilon(1e-9));
}

TEST_CASE("jailguard requires at least two variants") {
  auto model = ScriptedModel::from_json_text(R"([{"respond": "x"}])", 1);
  DefenseConfig cfg;
  cfg.kind = DefenseKind::jailguard;
  cfg.policy.n_variants = 1;
  const auto img = testsupport::random_image(16, 16, 2);
  CHECK_THROWS_AS(jailguard_detect(*model, cfg, {"t", promptkit::Provenance::opt}, img, Seed{1}),
                  DetectionInfeasible);
}

TEST_CASE("choose_theta implements the allowance rule") {
  CHECK(choose_theta({0.1, 0.2, 0.3}, 0.05) == 0.3);
  CHECK(choose_theta({0.0, 0.0, 0.0}, 0.05) == 0.0);
  // One rejection allowed at 25% of four scores: second-largest wins.
  CHECK(choose_theta({0.4, 0.1, 0.3, 0.2}, 0.25) == 0.3);
  // Sixteen scores at 5%: zero rejections forced, theta = max.
  std::vector<double> sixteen;
  for (int i = 1; i <= 16; ++i) sixteen.push_back(i * 0.01);
  CHECK(choose_theta(sixteen, 0.05) == 0.16);
}

TEST_CASE("choose_theta returns the minimal feasible grid value") {
  Rng rng(Seed{123});
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> scores;
    const int n = 2 + int(rng.next_u64() % 20);
    for (int i = 0; i < n; ++i) scores.push_back(rng.next_double());
    const double allowance = rng.next_double() * 0.5;
    const double theta = choose_theta(scores, allowance);

    auto frr_at = [&](double t) {
      int rej = 0;
      for (double s : scores) rej += s > t ? 1 : 0;
      return double(rej) / double(n);
    };
    CHECK(frr_at(theta) <= allowance);
    // No smaller grid point is feasible.
    for (double g : scores) {
      if (g < theta) CHECK(frr_at(g) > allowance);
    }
    if (theta > 0.0) CHECK(frr_at(0.0) > allowance);
  }
}

TEST_CASE("recall and frr are monotone non-increasing in theta") {
  Rng rng(Seed{321});
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> scores;
    for (int i = 0; i < 30; ++i) scores.push_back(rng.next_double());
    std::vector<double> grid = scores;
    std::sort(grid.begin(), grid.end());
    double last = 1e9;
    for (double theta : grid) {
      std::vector<bool> flags;
      for (double s : scores) flags.push_back(s > theta);
      const double pct = 100.0 * std::count(flags.begin(), flags.end(), true) / flags.size();
      CHECK(pct <= last);
      last = pct;
    }
  }
}

TEST_CASE("calibration over benign few-shot picks the max score under a 5% allowance") {
  TempDir dir;
  const auto benign = corpus::load_benign_corpus(testsupport::write_benign_manifest(dir, 16));

  // One model answers identically everywhere; the other echoes the image
  // hash, so every variant diverges.
  auto constant = ScriptedModel::from_json_text(R"([{"respond": "flat answer"}])", 1);
  auto varying = ScriptedModel::from_json_text(
      R"([{"respond": "looking at", "append_image_hash": true}])", 1);

  JailguardPolicy policy;
  const auto flat_cal = calibrate_threshold(*constant, policy, benign.cases, 0.05, Seed{9}, 4);
  CHECK(flat_cal.dev_scores.size() == 16);
  CHECK(flat_cal.chosen_theta == 0.0);

  const auto vary_cal = calibrate_threshold(*varying, policy, benign.cases, 0.05, Seed{9}, 4);
  CHECK(vary_cal.chosen_theta > 0.0);
  double max_score = 0.0;
  for (double s : vary_cal.dev_scores) max_score = std::max(max_score, s);
  CHECK(vary_cal.chosen_theta == max_score);
  // Zero false rejections on the dev set itself (strict > rule).
  std::vector<bool> flags;
  for (double s : vary_cal.dev_scores) flags.push_back(s > vary_cal.chosen_theta);
  CHECK(compute_frr(flags) == 0.0);

  // Per-model thresholds differ when response variability differs.
  CHECK(flat_cal.chosen_theta != vary_cal.chosen_theta);
}

TEST_CASE("calibration needs at least two usable scores") {
  TempDir dir;
  const auto benign = corpus::load_benign_corpus(testsupport::write_benign_manifest(dir, 1));
  auto model = ScriptedModel::from_json_text(R"([{"respond": "x"}])", 1);
  JailguardPolicy policy;
  CHECK_THROWS_AS(calibrate_threshold(*model, policy, benign.cases, 0.05, Seed{1}, 1),
                  InsufficientDev);
}

TEST_CASE("recall and frr percentages") {
  std::vector<bool> recall_flags(20, false);
  for (int i = 0; i < 15; ++i) recall_flags[i] = true;
  CHECK(compute_recall(recall_flags) == doctest::Approx(75.0));
  CHECK(compute_recall(std::vector<bool>(5, false)) == 0.0);
  CHECK(compute_recall(std::vector<bool>(5, true)) == 100.0);
  CHECK(compute_frr(std::vector<bool>(16, false)) == 0.0);
  std::vector<bool> one_of_16(16, false);
  one_of_16[3] = true;
  CHECK(compute_frr(one_of_16) == doctest::Approx(6.25));
  CHECK_THROWS_AS(compute_recall({}), EmptySet);
  CHECK_THROWS_AS(compute_frr({}), EmptySet);
}

TEST_CASE("detection store round-trips") {
  TempDir dir;
  DetectionRecord r;
  r.case_id = "case-000";
  r.category = "Animal";
  r.model = "scripted";
  r.setting = "opt_image";
  r.max_divergence = 0.125;
  r.flagged = true;
  r.theta = 0.025;
  r.variants_used = 8;
  r.timestamp = "2026-08-10T00:00:00.000Z";
  CHECK(append_detections(dir.file("d.jsonl"), {r}) == 1);
  const auto back = read_detections(dir.file("d.jsonl"));
  REQUIRE(back.size() == 1);
  CHECK(back[0].case_id == "case-000");
  CHECK(back[0].max_divergence == 0.125);
  CHECK(back[0].flagged);
}
