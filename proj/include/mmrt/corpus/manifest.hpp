#pragma once

#include <map>
#include <string>
#include <vector>

#include "mmrt/corpus/types.hpp"

namespace mmrt::corpus {

struct AttackCorpus {
  std::vector<AttackCase> cases;            // manifest order, invalid entries dropped
  std::map<Category, int> category_counts;  // valid cases per category
  std::vector<std::string> diagnostics;     // one line per rejected entry
};

struct BenignCorpus {
  std::vector<BenignCase> cases;
  std::vector<std::string> diagnostics;
};

// Reads a line-delimited manifest (one JSON record per line; fields case_id,
// category, keyword, keyword_type, text_opt, image_paths). Image paths resolve
// relative to the manifest's directory and must decode; entries that fail
// validation are skipped with a diagnostic. Throws ManifestUnreadable on file
// or syntax problems, DuplicateId on a repeated case_id, EmptyCorpus when the
// manifest holds no records at all.
AttackCorpus load_attack_corpus(const std::string& manifest_path);

// Same contract for benign records (fields case_id, text, image_path).
BenignCorpus load_benign_corpus(const std::string& manifest_path);

}  // namespace mmrt::corpus
