#include "mmrt/imageops/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "mmrt/errors.hpp"

namespace mmrt::imageops {

namespace {

std::uint8_t clamp_u8(double v) {
  const long r = std::lround(v);
  return static_cast<std::uint8_t>(std::clamp(r, 0L, 255L));
}

void blit(RasterImage& dst, const RasterImage& src, int x0, int y0) {
  for (int y = 0; y < src.height; ++y) {
    std::memcpy(dst.at(x0, y0 + y), src.at(0, y), static_cast<std::size_t>(src.width) * 3);
  }
}

std::vector<double> gaussian_kernel(double sigma, int half) {
  std::vector<double> k(2 * half + 1);
  double sum = 0.0;
  for (int i = -half; i <= half; ++i) {
    k[i + half] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
    sum += k[i + half];
  }
  for (double& w : k) w /= sum;
  return k;
}

}  // namespace

RasterImage vconcat(const RasterImage& top, const RasterImage& bottom) {
  const int w = std::max(top.width, bottom.width);
  RasterImage out = RasterImage::filled(w, top.height + bottom.height, 255, 255, 255);
  blit(out, top, (w - top.width) / 2, 0);
  blit(out, bottom, (w - bottom.width) / 2, top.height);
  return out;
}

RasterImage hconcat(const RasterImage& left, const RasterImage& right) {
  const int h = std::max(left.height, right.height);
  RasterImage out = RasterImage::filled(left.width + right.width, h, 255, 255, 255);
  blit(out, left, 0, (h - left.height) / 2);
  blit(out, right, left.width, (h - right.height) / 2);
  return out;
}

std::pair<RasterImage, RasterImage> split_vertical(const RasterImage& img) {
  if (img.width < 2) throw TooNarrow("split_vertical requires width >= 2");
  const int lw = img.width / 2;
  const int rw = img.width - lw;
  RasterImage left, right;
  left.width = lw;
  left.height = img.height;
  left.pixels.resize(static_cast<std::size_t>(lw) * img.height * 3);
  right.width = rw;
  right.height = img.height;
  right.pixels.resize(static_cast<std::size_t>(rw) * img.height * 3);
  for (int y = 0; y < img.height; ++y) {
    std::memcpy(left.at(0, y), img.at(0, y), static_cast<std::size_t>(lw) * 3);
    std::memcpy(right.at(0, y), img.at(lw, y), static_cast<std::size_t>(rw) * 3);
  }
  return {std::move(left), std::move(right)};
}

RasterImage gaussian_blur(const RasterImage& img, double sigma) {
  // "size 2" means sigma 2 with a 7x7 kernel; widths must be odd, so the
  // half-width is ceil(1.5 * sigma).
  const int half = std::max(1, static_cast<int>(std::ceil(1.5 * sigma)));
  const auto kernel = gaussian_kernel(sigma, half);
  const int w = img.width;
  const int h = img.height;

  std::vector<double> tmp(static_cast<std::size_t>(w) * h * 3);
  // Horizontal pass, edges clamped.
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc[3] = {0, 0, 0};
      for (int i = -half; i <= half; ++i) {
        const int sx = std::clamp(x + i, 0, w - 1);
        const std::uint8_t* px = img.at(sx, y);
        const double wgt = kernel[i + half];
        acc[0] += wgt * px[0];
        acc[1] += wgt * px[1];
        acc[2] += wgt * px[2];
      }
      double* out = &tmp[3 * (static_cast<std::size_t>(y) * w + x)];
      out[0] = acc[0];
      out[1] = acc[1];
      out[2] = acc[2];
    }
  }
  // Vertical pass; quantize once at the end.
  RasterImage out;
  out.width = w;
  out.height = h;
  out.pixels.resize(static_cast<std::size_t>(w) * h * 3);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc[3] = {0, 0, 0};
      for (int i = -half; i <= half; ++i) {
        const int sy = std::clamp(y + i, 0, h - 1);
        const double* px = &tmp[3 * (static_cast<std::size_t>(sy) * w + x)];
        const double wgt = kernel[i + half];
        acc[0] += wgt * px[0];
        acc[1] += wgt * px[1];
        acc[2] += wgt * px[2];
      }
      std::uint8_t* dst = out.at(x, y);
      dst[0] = clamp_u8(acc[0]);
      dst[1] = clamp_u8(acc[1]);
      dst[2] = clamp_u8(acc[2]);
    }
  }
  return out;
}

RasterImage color_adjust(const RasterImage& img, double factor_brightness,
                         double factor_contrast) {
  double mean_luma = 0.0;
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t* px = img.pixels.data() + 3 * i;
    mean_luma += 0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2];
  }
  if (n > 0) mean_luma /= static_cast<double>(n);

  RasterImage out = img;
  for (std::size_t i = 0; i < out.pixels.size(); ++i) {
    const double v = out.pixels[i];
    out.pixels[i] = clamp_u8(((v - mean_luma) * factor_contrast + mean_luma) * factor_brightness);
  }
  return out;
}

RasterImage color_jitter(const RasterImage& img, double brightness, double contrast, Seed seed) {
  if (brightness < 0.0 || brightness > 1.0 || contrast < 0.0 || contrast > 1.0) {
    throw BadDistribution("color_jitter brightness/contrast must be in [0, 1]");
  }
  Rng rng(seed);
  const double factor_b = rng.uniform(1.0 - brightness, 1.0 + brightness);
  const double factor_c = rng.uniform(1.0 - contrast, 1.0 + contrast);
  if (brightness == 0.0 && contrast == 0.0) return img;  // exact identity, no rounding
  return color_adjust(img, factor_b, factor_c);
}

RasterImage posterize(const RasterImage& img, int bits) {
  if (bits < 1 || bits > 8) throw BadDistribution("posterize bits must be in 1..8");
  const std::uint8_t mask = static_cast<std::uint8_t>(~((1u << (8 - bits)) - 1u));
  RasterImage out = img;
  for (auto& v : out.pixels) v &= mask;
  return out;
}

RasterImage rotate(const RasterImage& img, double angle_deg) {
  const double rad = angle_deg * std::acos(-1.0) / 180.0;
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  const double cx = (img.width - 1) / 2.0;
  const double cy = (img.height - 1) / 2.0;

  RasterImage out = RasterImage::filled(img.width, img.height, 255, 255, 255);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      // Inverse map: rotate the destination pixel back into the source.
      const double dx = x - cx;
      const double dy = y - cy;
      const double sx = cx + c * dx + s * dy;
      const double sy = cy - s * dx + c * dy;
      // White outside the source; the half-pixel band at the border samples
      // with clamped taps so exact-edge coordinates stay on the image.
      if (sx < -0.5 || sx > img.width - 0.5 || sy < -0.5 || sy > img.height - 0.5) continue;
      const int x0f = static_cast<int>(std::floor(sx));
      const int y0f = static_cast<int>(std::floor(sy));
      const double fx = sx - x0f;
      const double fy = sy - y0f;
      const int x0 = std::clamp(x0f, 0, img.width - 1);
      const int y0 = std::clamp(y0f, 0, img.height - 1);
      const int x1 = std::clamp(x0f + 1, 0, img.width - 1);
      const int y1 = std::clamp(y0f + 1, 0, img.height - 1);
      std::uint8_t* dst = out.at(x, y);
      for (int ch = 0; ch < 3; ++ch) {
        const double v00 = img.at(x0, y0)[ch];
        const double v10 = img.at(x1, y0)[ch];
        const double v01 = img.at(x0, y1)[ch];
        const double v11 = img.at(x1, y1)[ch];
        const double v = (1 - fy) * ((1 - fx) * v00 + fx * v10) + fy * ((1 - fx) * v01 + fx * v11);
        dst[ch] = clamp_u8(v);
      }
    }
  }
  return out;
}

RasterImage random_rotation(const RasterImage& img, double max_deg, Seed seed) {
  if (!(max_deg > 0.0) || max_deg > 180.0) {
    throw BadDistribution("random_rotation max_deg must be in (0, 180]");
  }
  Rng rng(seed);
  return rotate(img, rng.uniform(-max_deg, max_deg));
}

}  // namespace mmrt::imageops
