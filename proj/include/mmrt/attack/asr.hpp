#pragma once

#include <string>
#include <vector>

#include "mmrt/attack/engine.hpp"

namespace mmrt::attack {

struct AsrReport {
  // (category label, percentage) in canonical category order, present
  // categories only.
  std::vector<std::pair<std::string, double>> per_category;
  double overall = 0.0;           // pooled over every outcome
  double category_average = 0.0;  // arithmetic mean of the per-category cells
};

// ASR = 100 * successes / group size, kept in full precision; rounding
// happens at display time. Throws EmptyGroup on an empty outcome list.
AsrReport compute_asr(const std::vector<AttemptOutcome>& outcomes);

double group_asr(long successes, long total);

}  // namespace mmrt::attack
