#pragma once

#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mmrt/clients/model_client.hpp"

namespace mmrt::clients {

// Deterministic offline model driven by a rules file. The first matching rule
// wins; all predicates in a rule must hold. A rule with no predicate is the
// default and the rules file must contain one, which is checked at load time.
//
// Rule fields (all optional except "respond"):
//   text_contains      string or array; every substring must occur in the text
//   text_prefix        the text must start with this string
//   num_images         exact attachment count
//   image_hash_any_of  array of image content hashes; any attachment may match
//   min_call           matches from the Nth time this exact request is seen,
//                      enabling refuse-first / comply-on-repeat behaviors
//   respond            the canned response
//   append_image_hash  appends the first attachment's hash to the response,
//                      which makes responses vary per variant
struct ScriptedRule {
  std::vector<std::string> text_contains;
  std::optional<std::string> text_prefix;
  std::optional<int> num_images;
  std::vector<std::string> image_hash_any_of;
  std::optional<int> min_call;
  std::string respond;
  bool append_image_hash = false;

  bool is_default() const {
    return text_contains.empty() && !text_prefix && !num_images && image_hash_any_of.empty() &&
           !min_call;
  }
};

class ScriptedModel : public ModelClient {
 public:
  // Factories throw BadRules on malformed rules or a missing default. The
  // model holds per-request counters, so it lives behind a pointer.
  static std::shared_ptr<ScriptedModel> from_file(const std::string& rules_path,
                                                  int max_images = 2);
  static std::shared_ptr<ScriptedModel> from_json_text(const std::string& rules_json,
                                                       int max_images = 2);
  explicit ScriptedModel(std::vector<ScriptedRule> rules, int max_images = 2);

  std::string complete(const ChatRequest& req) override;
  int max_images() const override { return max_images_; }
  std::string label() const override { return "scripted"; }

  // Total completed queries, for request-count assertions.
  long query_count() const { return queries_.load(); }

 private:
  std::vector<ScriptedRule> rules_;
  int max_images_;
  std::atomic<long> queries_{0};
  std::mutex mutex_;
  std::map<std::string, int> call_counts_;  // per exact request content
};

}  // namespace mmrt::clients
