#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mmrt/promptkit/prompts.hpp"

namespace mmrt::defense {

enum class DefenseKind { adashield_s, adashield_a, jailguard };

const char* to_string(DefenseKind k);
std::optional<DefenseKind> defense_kind_from_string(std::string_view s);

// JailGuard's mutator policy: rotation / blur / posterize with the stated
// sampling probabilities, 8 variants by default.
struct JailguardPolicy {
  int n_variants = 8;
  std::array<double, 3> probs{0.34, 0.45, 0.21};  // rotation, blur, posterize
  double max_deg = 30.0;
  double sigma = 2.0;
  int bits = 2;
};

struct DefenseConfig {
  DefenseKind kind = DefenseKind::adashield_s;
  promptkit::DefenseOrdering ordering = promptkit::DefenseOrdering::defense_first;
  promptkit::DefensePrompt static_prompt;         // adashield_s
  std::vector<promptkit::DefensePrompt> pool;     // adashield_a
  JailguardPolicy policy;                         // jailguard
  double threshold = 0.025;                       // jailguard theta
};

// Pairwise divergences over the variant responses of one detection.
struct DivergenceReport {
  std::vector<std::vector<double>> pairwise;  // symmetric, zero diagonal
  double max_divergence = 0.0;
};

struct DetectionResult {
  bool flagged = false;
  DivergenceReport report;
  int variants_used = 0;
};

struct Calibration {
  std::vector<double> dev_scores;  // benign max-divergences, case order
  double allowance = 0.05;
  double chosen_theta = 0.0;
};

// One persisted detection outcome (JailGuard evaluation store).
struct DetectionRecord {
  std::string case_id;
  std::string category;  // "" for benign probes
  std::string model;
  std::string setting;
  double max_divergence = 0.0;
  bool flagged = false;
  double theta = 0.0;
  int variants_used = 0;
  std::string timestamp;
  std::string error;  // "" for a clean detection
};

}  // namespace mmrt::defense
