#include "mmrt/corpus/types.hpp"

namespace mmrt::corpus {

const char* to_string(Category c) {
  switch (c) {
    case Category::Animal: return "Animal";
    case Category::Financial: return "Financial";
    case Category::Privacy: return "Privacy";
    case Category::SelfHarm: return "Self-Harm";
    case Category::Violence: return "Violence";
  }
  return "?";
}

std::optional<Category> category_from_string(std::string_view s) {
  for (Category c : all_categories()) {
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

const std::vector<Category>& all_categories() {
  static const std::vector<Category> cats = {Category::Animal, Category::Financial,
                                             Category::Privacy, Category::SelfHarm,
                                             Category::Violence};
  return cats;
}

const char* to_string(KeywordType t) {
  switch (t) {
    case KeywordType::Behavior: return "behavior";
    case KeywordType::Concept: return "concept";
    case KeywordType::Object: return "object";
  }
  return "?";
}

std::optional<KeywordType> keyword_type_from_string(std::string_view s) {
  if (s == "behavior") return KeywordType::Behavior;
  if (s == "concept") return KeywordType::Concept;
  if (s == "object") return KeywordType::Object;
  return std::nullopt;
}

const char* to_string(Phase p) { return p == Phase::initial ? "initial" : "reattack"; }

std::optional<Phase> phase_from_string(std::string_view s) {
  if (s == "initial") return Phase::initial;
  if (s == "reattack") return Phase::reattack;
  return std::nullopt;
}

}  // namespace mmrt::corpus
