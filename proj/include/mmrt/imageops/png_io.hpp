#pragma once

#include <string>

#include "mmrt/imageops/image.hpp"

namespace mmrt::imageops {

// Decodes any PNG to 8-bit RGB (palette expanded, 16-bit narrowed, gray
// promoted, alpha dropped). Throws ImageDecodeError.
RasterImage load_png(const std::string& path);

// Writes 8-bit RGB PNG. Throws IoFailure.
void save_png(const RasterImage& img, const std::string& path);

// In-memory encode, used for data-URL attachments.
std::string encode_png(const RasterImage& img);

}  // namespace mmrt::imageops
