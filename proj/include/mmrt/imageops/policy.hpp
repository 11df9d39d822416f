#pragma once

#include <array>
#include <string>
#include <vector>

#include "mmrt/imageops/image.hpp"
#include "mmrt/util/rng.hpp"

namespace mmrt::imageops {

enum class MutationKind { gaussian_blur, color_jitter, posterize, random_rotation };

std::string to_string(MutationKind kind);

// One sampled mutator with its parameters and a private seed.
struct Mutation {
  MutationKind kind = MutationKind::gaussian_blur;
  double sigma = 2.0;       // gaussian_blur
  double brightness = 0.5;  // color_jitter
  double contrast = 0.5;
  int bits = 2;             // posterize
  double max_deg = 30.0;    // random_rotation
  Seed seed;
};

// The JailGuard mutator policy: n_variants i.i.d. draws over
// {random_rotation, gaussian_blur, posterize} with the given probabilities.
// Each draw carries default parameters and a sub-seed derived from
// (seed, index), so variant i is reproducible in isolation.
std::vector<Mutation> sample_policy(int n_variants, const std::array<double, 3>& probs,
                                    Seed seed);

RasterImage apply_mutation(const RasterImage& img, const Mutation& m);

}  // namespace mmrt::imageops
