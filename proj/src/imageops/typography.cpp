#include "mmrt/imageops/typography.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "mmrt/errors.hpp"
#include "mmrt/imageops/font8x8_data.hpp"

namespace mmrt::imageops {

namespace {
constexpr int kGlyphSize = 8;
constexpr int kMargin = 8;
}  // namespace

const Typeface& Typeface::builtin() {
  static const Typeface face = [] {
    Typeface f;
    f.glyphs_ = kMono8x8Glyphs;
    return f;
  }();
  return face;
}

Typeface Typeface::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open font file: " + path);
  Typeface face;
  std::string line;
  int loaded = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int cp = -1;
    std::string hex;
    if (!(ls >> cp >> hex) || cp < 32 || cp > 126 || hex.size() != 16) {
      throw IoFailure("malformed font line: " + line);
    }
    auto& rows = face.glyphs_[cp - 32];
    for (int i = 0; i < kGlyphSize; ++i) {
      rows[i] = static_cast<std::uint8_t>(std::stoi(hex.substr(2 * i, 2), nullptr, 16));
    }
    ++loaded;
  }
  if (loaded != 95) throw IoFailure("font file must define all 95 ASCII glyphs: " + path);
  return face;
}

const std::array<std::uint8_t, 8>* Typeface::glyph(char c) const {
  const unsigned char uc = static_cast<unsigned char>(c);
  if (uc < 32 || uc > 126) return nullptr;
  return &glyphs_[uc - 32];
}

RasterImage render_typography(const std::string& keyword, int font_px, const Typeface& face) {
  if (font_px < 8) throw UnrenderableText("font_px must be >= 8");

  struct Placed {
    const std::array<std::uint8_t, 8>* rows;
  };
  std::vector<Placed> line;
  bool any_ink = false;
  for (char c : keyword) {
    const auto* g = face.glyph(c);
    if (!g) continue;  // outside the face
    line.push_back({g});
    for (auto row : *g) any_ink = any_ink || row != 0;
  }
  if (line.empty() || !any_ink) {
    throw UnrenderableText("keyword has no renderable glyphs: \"" + keyword + "\"");
  }

  const int scale = font_px / kGlyphSize;  // >= 1 given font_px >= 8
  const int cell = kGlyphSize * scale;
  const int width = static_cast<int>(line.size()) * cell + 2 * kMargin;
  const int height = cell + 2 * kMargin;
  RasterImage img = RasterImage::filled(width, height, 255, 255, 255);

  for (std::size_t i = 0; i < line.size(); ++i) {
    const int x0 = kMargin + static_cast<int>(i) * cell;
    const auto& rows = *line[i].rows;
    for (int gy = 0; gy < kGlyphSize; ++gy) {
      for (int gx = 0; gx < kGlyphSize; ++gx) {
        if (!((rows[gy] >> gx) & 1)) continue;
        for (int sy = 0; sy < scale; ++sy) {
          for (int sx = 0; sx < scale; ++sx) {
            std::uint8_t* px = img.at(x0 + gx * scale + sx, kMargin + gy * scale + sy);
            px[0] = px[1] = px[2] = 0;
          }
        }
      }
    }
  }
  return img;
}

}  // namespace mmrt::imageops
