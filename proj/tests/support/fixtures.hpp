#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mmrt/corpus/manifest.hpp"
#include "mmrt/corpus/types.hpp"
#include "mmrt/imageops/image.hpp"

namespace mmrt::testsupport {

// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

// A small HADES-shaped image prompt: colored block with the keyword
// typography stacked on top.
imageops::RasterImage make_case_image(const std::string& keyword, unsigned tint);

// Writes `n_cases` attack cases round-robin across the five categories into
// dir, ids "case-000".., text_opt carrying the id, plus a manifest. Returns
// the manifest path.
std::string write_attack_manifest(const TempDir& dir, int n_cases, int images_per_case = 1);

// Benign cases "benign-000".. with one image each.
std::string write_benign_manifest(const TempDir& dir, int n_cases);

// Deterministic random RGB image.
imageops::RasterImage random_image(int width, int height, std::uint64_t seed);

inline std::string case_id_of(int i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "case-%03d", i);
  return buf;
}

}  // namespace mmrt::testsupport
