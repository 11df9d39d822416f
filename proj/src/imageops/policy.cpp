#include "mmrt/imageops/policy.hpp"

#include <cmath>

#include "mmrt/errors.hpp"
#include "mmrt/imageops/transforms.hpp"

namespace mmrt::imageops {

std::string to_string(MutationKind kind) {
  switch (kind) {
    case MutationKind::gaussian_blur: return "gaussian_blur";
    case MutationKind::color_jitter: return "color_jitter";
    case MutationKind::posterize: return "posterize";
    case MutationKind::random_rotation: return "random_rotation";
  }
  return "unknown";
}

std::vector<Mutation> sample_policy(int n_variants, const std::array<double, 3>& probs,
                                    Seed seed) {
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw BadDistribution("negative sampling probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw BadDistribution("sampling probabilities must sum to 1");
  if (n_variants < 1) throw BadDistribution("n_variants must be >= 1");

  Rng rng(seed);
  std::vector<Mutation> out;
  out.reserve(n_variants);
  for (int i = 0; i < n_variants; ++i) {
    const double u = rng.next_double();
    Mutation m;
    if (u < probs[0]) {
      m.kind = MutationKind::random_rotation;
    } else if (u < probs[0] + probs[1]) {
      m.kind = MutationKind::gaussian_blur;
    } else {
      m.kind = MutationKind::posterize;
    }
    m.seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    out.push_back(m);
  }
  return out;
}

RasterImage apply_mutation(const RasterImage& img, const Mutation& m) {
  switch (m.kind) {
    case MutationKind::gaussian_blur: return gaussian_blur(img, m.sigma);
    case MutationKind::color_jitter: return color_jitter(img, m.brightness, m.contrast, m.seed);
    case MutationKind::posterize: return posterize(img, m.bits);
    case MutationKind::random_rotation: return random_rotation(img, m.max_deg, m.seed);
  }
  return img;
}

}  // namespace mmrt::imageops
