#pragma once

#include <utility>

#include "mmrt/imageops/image.hpp"
#include "mmrt/util/rng.hpp"

namespace mmrt::imageops {

// Stacks top over bottom. Output width = max of the two; the narrower image
// is centered on white. Height = sum of heights.
RasterImage vconcat(const RasterImage& top, const RasterImage& bottom);

// Places left beside right; the shorter image is centered on white.
RasterImage hconcat(const RasterImage& left, const RasterImage& right);

// Cuts along the vertical axis: left gets floor(W/2) columns, right the rest.
// hconcat(split...) reproduces the input bit-exactly. Throws TooNarrow if W < 2.
std::pair<RasterImage, RasterImage> split_vertical(const RasterImage& img);

// Separable Gaussian, sigma = size, 7x7 kernel at sigma 2, edges
// clamp-replicated. Deterministic.
RasterImage gaussian_blur(const RasterImage& img, double sigma = 2.0);

// Deterministic core of color_jitter: per pixel, contrast scales the distance
// from the image's mean luma, then brightness scales the result.
RasterImage color_adjust(const RasterImage& img, double factor_brightness,
                         double factor_contrast);

// Samples factor_b ~ U[1-brightness, 1+brightness] then
// factor_c ~ U[1-contrast, 1+contrast] from the seed and applies color_adjust.
RasterImage color_jitter(const RasterImage& img, double brightness, double contrast, Seed seed);

// Keeps the top `bits` bits of every channel. Idempotent.
RasterImage posterize(const RasterImage& img, int bits = 2);

// Deterministic core of random_rotation: rotate about the image center by
// angle_deg, bilinear sampling, white fill outside the source, same canvas.
RasterImage rotate(const RasterImage& img, double angle_deg);

// angle ~ U[-max_deg, +max_deg] from the seed, then rotate.
RasterImage random_rotation(const RasterImage& img, double max_deg, Seed seed);

}  // namespace mmrt::imageops
