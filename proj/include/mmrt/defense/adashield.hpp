#pragma once

#include <string>
#include <vector>

#include "mmrt/clients/judge.hpp"
#include "mmrt/clients/model_client.hpp"
#include "mmrt/corpus/types.hpp"
#include "mmrt/defense/types.hpp"

namespace mmrt::defense {

// TF cosine over lowercased word tokens; the adaptive pool's retrieval metric.
double lexical_cosine(const std::string& a, const std::string& b);

// AdaShield-S wraps with the static prompt; AdaShield-A retrieves the pool
// entry whose key is lexically closest to query_key (ties break by pool
// order) and wraps with it, in the configured ordering. Throws EmptyPool when
// an adaptive config has nothing to retrieve.
promptkit::TextPrompt adashield_apply(const DefenseConfig& cfg,
                                      const promptkit::TextPrompt& attack,
                                      const std::string& query_key);

struct TrainOptions {
  int max_rounds = 3;
  promptkit::DefenseOrdering ordering = promptkit::DefenseOrdering::defense_first;
  // Placeholders {instruction}, {previous_defense}, {target_response}.
  std::string defender_template = default_defender_template();

  static std::string default_defender_template();
};

// The AdaShield-A training stage: per few-shot case, iteratively ask the
// defender for a candidate prompt (feeding back the previous candidate and
// the target's last response), wrap and query the target, and accept the
// candidate once the judge deems the response non-harmful. Stops per case at
// acceptance or max_rounds; an empty pool is a warning for the caller, not
// an error. Pool keys are the case instruction texts.
std::vector<promptkit::DefensePrompt> adashield_train(clients::ModelClient& defender,
                                                      clients::ModelClient& target,
                                                      clients::JudgeClient& judge,
                                                      const std::vector<corpus::AttackCase>& fewshot,
                                                      const TrainOptions& opts);

// Line-delimited pool persistence (key, text per record).
void save_pool(const std::string& path, const std::vector<promptkit::DefensePrompt>& pool);
std::vector<promptkit::DefensePrompt> load_pool(const std::string& path);

}  // namespace mmrt::defense
