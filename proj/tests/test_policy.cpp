#include <doctest.h>

#include <cmath>
#include <map>

#include "mmrt/errors.hpp"
#include "mmrt/imageops/policy.hpp"

using namespace mmrt;
using namespace mmrt::imageops;

TEST_CASE("degenerate distribution draws a single kind") {
  const auto plan = sample_policy(16, {1.0, 0.0, 0.0}, Seed{1});
  for (const auto& m : plan) CHECK(m.kind == MutationKind::random_rotation);
}

TEST_CASE("policy sampling is reproducible and sub-seeded per index") {
  const auto a = sample_policy(8, {0.34, 0.45, 0.21}, Seed{7});
  const auto b = sample_policy(8, {0.34, 0.45, 0.21}, Seed{7});
  REQUIRE(a.size() == 8);
  for (int i = 0; i < 8; ++i) {
    CHECK(a[i].kind == b[i].kind);
    CHECK(a[i].seed.value == b[i].seed.value);
  }
  // Sub-seeds differ across indices, so same-kind variants still diverge.
  CHECK(a[0].seed.value != a[1].seed.value);
}

TEST_CASE("empirical frequencies approach the stated probabilities") {
  const int n = 100000;
  const auto plan = sample_policy(n, {0.34, 0.45, 0.21}, Seed{2024});
  std::map<MutationKind, int> counts;
  for (const auto& m : plan) counts[m.kind] += 1;
  CHECK(std::abs(counts[MutationKind::random_rotation] / double(n) - 0.34) <= 0.01);
  CHECK(std::abs(counts[MutationKind::gaussian_blur] / double(n) - 0.45) <= 0.01);
  CHECK(std::abs(counts[MutationKind::posterize] / double(n) - 0.21) <= 0.01);
}

TEST_CASE("bad distributions are rejected") {
  CHECK_THROWS_AS(sample_policy(8, {0.5, 0.2, 0.2}, Seed{1}), BadDistribution);
  CHECK_THROWS_AS(sample_policy(8, {1.2, -0.1, -0.1}, Seed{1}), BadDistribution);
  CHECK_THROWS_AS(sample_policy(0, {0.34, 0.45, 0.21}, Seed{1}), BadDistribution);
}
