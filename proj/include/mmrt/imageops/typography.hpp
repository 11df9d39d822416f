#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "mmrt/imageops/image.hpp"

namespace mmrt::imageops {

// Monospace 8x8 bitmap face. The default is compiled in; the same table
// ships as assets/mono8x8.fnt and a replacement file can be loaded to swap
// the glyph set without rebuilding.
class Typeface {
 public:
  static const Typeface& builtin();
  static Typeface load_file(const std::string& path);  // throws IoFailure

  // Returns nullptr for codepoints outside the face.
  const std::array<std::uint8_t, 8>* glyph(char c) const;

  bool operator==(const Typeface& other) const = default;

 private:
  std::array<std::array<std::uint8_t, 8>, 95> glyphs_{};  // ASCII 32..126
};

// Renders the keyword as black glyphs on white, single line, fixed 8-px
// margin. Glyphs scale by floor(font_px / 8), nearest-neighbor. Characters
// outside the face are skipped; a keyword with no visible renderable
// character throws UnrenderableText.
RasterImage render_typography(const std::string& keyword, int font_px,
                              const Typeface& face = Typeface::builtin());

}  // namespace mmrt::imageops
