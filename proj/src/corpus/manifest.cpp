#include "mmrt/corpus/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "mmrt/errors.hpp"
#include "mmrt/imageops/png_io.hpp"

namespace mmrt::corpus {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::vector<json> read_manifest_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ManifestUnreadable("cannot open manifest: " + path);
  std::vector<json> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json entry = json::parse(line, nullptr, false);
    if (entry.is_discarded() || !entry.is_object()) {
      throw ManifestUnreadable(path + ":" + std::to_string(lineno) + ": not a JSON object");
    }
    entries.push_back(std::move(entry));
  }
  if (entries.empty()) throw EmptyCorpus("manifest has no records: " + path);
  return entries;
}

std::string resolve(const fs::path& base_dir, const std::string& p) {
  fs::path path(p);
  if (path.is_absolute()) return path.lexically_normal().string();
  return (base_dir / path).lexically_normal().string();
}

// Decodability is part of the ingest contract: a path that does not open as
// an image rejects the whole case.
bool check_image(const std::string& path, std::string& why) {
  try {
    imageops::load_png(path);
    return true;
  } catch (const Error& e) {
    why = e.what();
    return false;
  }
}

}  // namespace

AttackCorpus load_attack_corpus(const std::string& manifest_path) {
  const auto entries = read_manifest_lines(manifest_path);
  const fs::path base_dir = fs::path(manifest_path).parent_path();

  AttackCorpus corpus;
  for (Category c : all_categories()) corpus.category_counts[c] = 0;

  std::set<std::string> seen_ids;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const json& e = entries[i];
    auto reject = [&](const std::string& why) {
      corpus.diagnostics.push_back("entry " + std::to_string(i + 1) + " (" +
                                   e.value("case_id", std::string("?")) + "): " + why);
    };

    AttackCase c;
    c.case_id = e.value("case_id", std::string());
    if (c.case_id.empty()) {
      reject("missing case_id");
      continue;
    }
    if (!seen_ids.insert(c.case_id).second) {
      throw DuplicateId("duplicate case_id in manifest: " + c.case_id);
    }
    const auto cat = category_from_string(e.value("category", std::string()));
    if (!cat) {
      reject("unknown category '" + e.value("category", std::string()) + "'");
      continue;
    }
    c.category = *cat;
    c.keyword = e.value("keyword", std::string());
    if (c.keyword.empty()) {
      reject("missing keyword");
      continue;
    }
    const auto kt = keyword_type_from_string(e.value("keyword_type", std::string()));
    if (!kt) {
      reject("unknown keyword_type '" + e.value("keyword_type", std::string()) + "'");
      continue;
    }
    c.keyword_type = *kt;
    c.text_opt = e.value("text_opt", std::string());
    if (c.text_opt.empty()) {
      reject("missing text_opt");
      continue;
    }
    if (!e.contains("image_paths") || !e["image_paths"].is_array() || e["image_paths"].empty()) {
      reject("image_paths missing or empty");
      continue;
    }
    bool ok = true;
    for (const auto& p : e["image_paths"]) {
      if (!p.is_string()) {
        reject("image_paths entries must be strings");
        ok = false;
        break;
      }
      std::string full = resolve(base_dir, p.get<std::string>());
      std::string why;
      if (!check_image(full, why)) {
        reject("image rejected: " + why);
        ok = false;
        break;
      }
      c.image_paths.push_back(std::move(full));
    }
    if (!ok) continue;

    corpus.category_counts[c.category] += 1;
    corpus.cases.push_back(std::move(c));
  }
  return corpus;
}

BenignCorpus load_benign_corpus(const std::string& manifest_path) {
  const auto entries = read_manifest_lines(manifest_path);
  const fs::path base_dir = fs::path(manifest_path).parent_path();

  BenignCorpus corpus;
  std::set<std::string> seen_ids;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const json& e = entries[i];
    auto reject = [&](const std::string& why) {
      corpus.diagnostics.push_back("entry " + std::to_string(i + 1) + " (" +
                                   e.value("case_id", std::string("?")) + "): " + why);
    };

    BenignCase c;
    c.case_id = e.value("case_id", std::string());
    if (c.case_id.empty()) {
      reject("missing case_id");
      continue;
    }
    if (!seen_ids.insert(c.case_id).second) {
      throw DuplicateId("duplicate case_id in manifest: " + c.case_id);
    }
    c.text = e.value("text", std::string());
    if (c.text.empty()) {
      reject("missing text");
      continue;
    }
    const std::string rel = e.value("image_path", std::string());
    if (rel.empty()) {
      reject("missing image_path");
      continue;
    }
    c.image_path = resolve(base_dir, rel);
    std::string why;
    if (!check_image(c.image_path, why)) {
      reject("image rejected: " + why);
      continue;
    }
    corpus.cases.push_back(std::move(c));
  }
  return corpus;
}

}  // namespace mmrt::corpus
