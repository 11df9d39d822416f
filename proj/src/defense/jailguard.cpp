#include "mmrt/defense/jailguard.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "mmrt/errors.hpp"
#include "mmrt/imageops/png_io.hpp"
#include "mmrt/imageops/policy.hpp"
#include "mmrt/util/parallel.hpp"
#include "mmrt/util/time.hpp"

namespace mmrt::defense {

namespace {

using nlohmann::json;

std::vector<std::string> whitespace_tokens_lower(const std::string& text) {
  std::vector<std::string> tokens;
  std::string word;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!word.empty()) {
        tokens.push_back(std::move(word));
        word.clear();
      }
    } else {
      word += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  if (!word.empty()) tokens.push_back(std::move(word));
  return tokens;
}

}  // namespace

double divergence(const std::string& a, const std::string& b) {
  const auto ta = whitespace_tokens_lower(a);
  const auto tb = whitespace_tokens_lower(b);

  std::map<std::string, std::pair<int, int>> counts;
  for (const auto& w : ta) counts[w].first += 1;
  for (const auto& w : tb) counts[w].second += 1;
  if (counts.empty()) return 0.0;  // both empty, by convention

  const double vocab = static_cast<double>(counts.size());
  const double den_p = static_cast<double>(ta.size()) + vocab;
  const double den_q = static_cast<double>(tb.size()) + vocab;

  double kl = 0.0;
  for (const auto& [w, c] : counts) {
    const double p = (c.first + 1) / den_p;   // add-one smoothing
    const double q = (c.second + 1) / den_q;
    kl += p * std::log(p / q);
  }
  return kl;
}

double symmetric_divergence(const std::string& a, const std::string& b) {
  return divergence(a, b) + divergence(b, a);
}

DivergenceReport measure_divergence(clients::ModelClient& model, const JailguardPolicy& policy,
                                    const promptkit::TextPrompt& text,
                                    const imageops::RasterImage& image, Seed seed) {
  return measure_divergence(model, policy, text, std::vector<imageops::RasterImage>{image}, seed);
}

DivergenceReport measure_divergence(clients::ModelClient& model, const JailguardPolicy& policy,
                                    const promptkit::TextPrompt& text,
                                    const std::vector<imageops::RasterImage>& images, Seed seed) {
  if (policy.n_variants < 2) {
    throw DetectionInfeasible("policy needs at least 2 variants, got " +
                              std::to_string(policy.n_variants));
  }
  auto mutations = imageops::sample_policy(policy.n_variants, policy.probs, seed);
  for (auto& m : mutations) {
    m.max_deg = policy.max_deg;
    m.sigma = policy.sigma;
    m.bits = policy.bits;
  }

  std::vector<std::string> responses;
  for (const auto& m : mutations) {
    clients::ChatRequest req;
    req.text = text;
    for (const auto& img : images) req.images.push_back(imageops::apply_mutation(img, m));
    try {
      responses.push_back(model.complete(req));
    } catch (const Error&) {
      // Dropped variant; detection continues on the survivors.
    }
  }
  if (responses.size() < 2) {
    throw DetectionInfeasible("fewer than 2 variant responses survived (" +
                              std::to_string(responses.size()) + ")");
  }

  const std::size_t n = responses.size();
  DivergenceReport report;
  report.pairwise.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = symmetric_divergence(responses[i], responses[j]);
      report.pairwise[i][j] = d;
      report.pairwise[j][i] = d;
      report.max_divergence = std::max(report.max_divergence, d);
    }
  }
  return report;
}

DetectionResult jailguard_detect(clients::ModelClient& model, const DefenseConfig& cfg,
                                 const promptkit::TextPrompt& text,
                                 const imageops::RasterImage& image, Seed seed) {
  DetectionResult result;
  result.report = measure_divergence(model, cfg.policy, text, image, seed);
  result.variants_used = static_cast<int>(result.report.pairwise.size());
  result.flagged = result.report.max_divergence > cfg.threshold;  // strictly greater
  return result;
}

double choose_theta(const std::vector<double>& scores, double allowance) {
  if (scores.empty()) throw InsufficientDev("no dev scores");
  std::vector<double> grid = scores;
  grid.push_back(0.0);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const double n = static_cast<double>(scores.size());
  for (const double theta : grid) {
    long rejected = 0;
    for (const double s : scores) {
      if (s > theta) ++rejected;
    }
    if (static_cast<double>(rejected) / n <= allowance) return theta;
  }
  // The largest score always satisfies the rule (zero rejections).
  return grid.back();
}

Calibration calibrate_threshold(clients::ModelClient& model, const JailguardPolicy& policy,
                                const std::vector<corpus::BenignCase>& benign_fewshot,
                                double allowance, Seed seed, int parallelism) {
  if (benign_fewshot.size() < 2) {
    throw InsufficientDev("calibration needs at least 2 benign cases, got " +
                          std::to_string(benign_fewshot.size()));
  }

  std::vector<std::optional<double>> scores(benign_fewshot.size());
  parallel_for(benign_fewshot.size(), parallelism, [&](std::size_t i) {
    const auto& c = benign_fewshot[i];
    try {
      const auto image = imageops::load_png(c.image_path);
      const promptkit::TextPrompt text{c.text, promptkit::Provenance::opt};
      const auto report = measure_divergence(model, policy, text, image,
                                             derive_seed(seed, fnv1a64(c.case_id)));
      scores[i] = report.max_divergence;
    } catch (const Error&) {
      // Unusable dev case; calibration proceeds on the rest.
    }
  });

  Calibration cal;
  cal.allowance = allowance;
  for (const auto& s : scores) {
    if (s) cal.dev_scores.push_back(*s);
  }
  if (cal.dev_scores.size() < 2) {
    throw InsufficientDev("fewer than 2 usable dev scores (" +
                          std::to_string(cal.dev_scores.size()) + ")");
  }
  cal.chosen_theta = choose_theta(cal.dev_scores, allowance);
  return cal;
}

namespace {

double flagged_pct(const std::vector<bool>& flags, const char* what) {
  if (flags.empty()) throw EmptySet(std::string("empty ") + what);
  long n = 0;
  for (bool f : flags) n += f ? 1 : 0;
  return 100.0 * static_cast<double>(n) / static_cast<double>(flags.size());
}

}  // namespace

double compute_recall(const std::vector<bool>& flags) { return flagged_pct(flags, "attack set"); }

double compute_frr(const std::vector<bool>& flags) { return flagged_pct(flags, "benign set"); }

std::size_t append_detections(const std::string& path,
                              const std::vector<DetectionRecord>& records) {
  if (records.empty()) return 0;
  std::string batch;
  for (const auto& r : records) {
    json j{{"case_id", r.case_id},
           {"category", r.category},
           {"model", r.model},
           {"setting", r.setting},
           {"max_divergence", r.max_divergence},
           {"flagged", r.flagged},
           {"theta", r.theta},
           {"variants_used", r.variants_used},
           {"timestamp", r.timestamp},
           {"error", r.error}};
    batch += j.dump();
    batch += '\n';
  }
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw IoFailure("cannot open detection store for append: " + path);
  out.write(batch.data(), static_cast<std::streamsize>(batch.size()));
  out.flush();
  if (!out) throw IoFailure("write failed: " + path);
  return records.size();
}

std::vector<DetectionRecord> read_detections(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open detection store: " + path);
  std::vector<DetectionRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw IoFailure("detection line is not a JSON object");
    DetectionRecord r;
    r.case_id = j.value("case_id", std::string());
    r.category = j.value("category", std::string());
    r.model = j.value("model", std::string());
    r.setting = j.value("setting", std::string());
    r.max_divergence = j.value("max_divergence", 0.0);
    r.flagged = j.value("flagged", false);
    r.theta = j.value("theta", 0.0);
    r.variants_used = j.value("variants_used", 0);
    r.timestamp = j.value("timestamp", std::string());
    r.error = j.value("error", std::string());
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<DetectionRecord> read_detections_if_exists(const std::string& path) {
  if (!std::filesystem::exists(path)) return {};
  return read_detections(path);
}

}  // namespace mmrt::defense
