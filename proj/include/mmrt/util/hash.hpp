#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace mmrt {

// FNV-1a 64-bit. Used for all content hashes recorded alongside attempts;
// stable across platforms so stores stay comparable between runs.
inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t seed = 14695981039346656037ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::uint64_t fnv1a64(std::string_view s) { return fnv1a64(s.data(), s.size()); }

std::string to_hex(std::uint64_t value);

inline std::string hash_hex(std::string_view s) { return to_hex(fnv1a64(s)); }

}  // namespace mmrt
