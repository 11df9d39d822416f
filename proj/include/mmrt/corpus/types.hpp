#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mmrt::corpus {

// The five harm categories. Labels are byte-exact in every report.
enum class Category { Animal, Financial, Privacy, SelfHarm, Violence };

inline constexpr int kCategoryCount = 5;

const char* to_string(Category c);
std::optional<Category> category_from_string(std::string_view s);
const std::vector<Category>& all_categories();

enum class KeywordType { Behavior, Concept, Object };

const char* to_string(KeywordType t);
std::optional<KeywordType> keyword_type_from_string(std::string_view s);

// One harmful instruction with its replaced keyword and the image prompts
// produced for it (typography-only plus up to 5 optimization iterations).
struct AttackCase {
  std::string case_id;
  Category category = Category::Animal;
  std::string keyword;
  KeywordType keyword_type = KeywordType::Behavior;
  std::string text_opt;                  // instruction with the keyword already deferred to the image
  std::vector<std::string> image_paths;  // resolved, ordered by iteration
};

struct BenignCase {
  std::string case_id;
  std::string text;
  std::string image_path;
};

enum class Phase { initial, reattack };

const char* to_string(Phase p);
std::optional<Phase> phase_from_string(std::string_view s);

// One model query plus its judge verdict, as persisted in the attempt store.
struct AttemptRecord {
  std::string case_id;
  std::string category;  // report label, "" for benign probes
  std::string model;
  std::string setting;
  std::string defense;  // "" when undefended
  Phase phase = Phase::initial;
  std::string prompt_text_hash;
  std::vector<std::string> image_hashes;
  std::string response_text;
  bool verdict = false;  // judge said harmful
  std::int64_t latency_ms = 0;
  std::string timestamp;
  std::string error;           // "" for a clean attempt
  std::string iteration_mode;  // "last" or "all"

  bool operator==(const AttemptRecord& other) const = default;
};

}  // namespace mmrt::corpus
