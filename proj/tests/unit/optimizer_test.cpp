#include "cubenorm/quartic.hpp"
#include "cubenorm/sampling.hpp"

#include <gtest/gtest.h>

using namespace cubenorm;

namespace {

OptimizerConfig quick(std::uint64_t seed = 0, int threads = 1) {
  OptimizerConfig cfg;
  cfg.starts = 8;
  cfg.max_iters = 2000;
  cfg.seed = seed;
  cfg.threads = threads;
  return cfg;
}

}  // namespace

TEST(MuLower, SingletonIsOne) {
  const MuEstimate est = mu_lower(SupportSet(4, {0b0110}));
  EXPECT_DOUBLE_EQ(est.value, 1.0);
  EXPECT_TRUE(est.converged);
  ASSERT_EQ(est.certificate.coords.size(), 1U);
  EXPECT_DOUBLE_EQ(std::abs(est.certificate.coords[0]), 1.0);
}

TEST(MuLower, EmptySetRejected) { EXPECT_THROW(mu_lower(SupportSet(3, {})), DomainError); }

TEST(MuLower, FirstLevelSpheres) {
  for (int n = 2; n <= 8; ++n) {
    const MuEstimate est = mu_lower(SupportSet::sphere(n, 1), quick());
    EXPECT_GE(est.value, 3.0 - 2.0 / n - 1e-9) << "n=" << n;
    EXPECT_LE(est.value, 3.0 + 1e-12) << "n=" << n;
  }
}

TEST(MuLower, SubspacesReachTheirSize) {
  for (int d = 0; d <= 3; ++d) {
    std::vector<Mask> gens;
    for (int i = 0; i < d; ++i) gens.push_back((Mask{1} << (2 * i)) | (Mask{1} << (2 * i + 1)));
    const SupportSet sub = SupportSet::span(7, gens);
    const double size = static_cast<double>(sub.size());
    EXPECT_NEAR(mu_lower(sub, quick()).value, size, 1e-6);
    EXPECT_DOUBLE_EQ(mu_upper(sub).best, size);
  }
}

TEST(MuLower, CertificateIsUnitAndValueMatches) {
  Rng rng(51);
  const SupportSet a = random_support(rng, 6, 12);
  const MuEstimate est = mu_lower(a, quick(5));
  EXPECT_TRUE(est.certificate.is_normalized(1e-9));
  EXPECT_EQ(est.certificate.support, a);
  EXPECT_DOUBLE_EQ(est.value, big_f(est.certificate));
  EXPECT_GE(est.starts_used, 9);
  EXPECT_GT(est.iterations, 0);
}

TEST(MuLower, NeverExceedsUpperBound) {
  Rng rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 9;
    const std::size_t size = 1 + rng() % std::min<std::uint64_t>(40, std::uint64_t{1} << n);
    const SupportSet a = random_support(rng, n, size);
    const MuEstimate est = mu_lower(a, quick(trial));
    EXPECT_LE(est.value, mu_upper(a).best + 1e-8);
    EXPECT_GE(est.value, to_double(energy_ratio(a)) - 1e-9);
  }
}

TEST(MuLower, DeterministicAcrossThreadCounts) {
  Rng rng(53);
  const SupportSet a = random_support(rng, 7, 20);
  const MuEstimate one = mu_lower(a, quick(9, 1));
  const MuEstimate three = mu_lower(a, quick(9, 3));
  const MuEstimate again = mu_lower(a, quick(9, 1));
  EXPECT_EQ(one.value, three.value);
  EXPECT_EQ(one.certificate.coords, three.certificate.coords);
  EXPECT_EQ(one.iterations, three.iterations);
  EXPECT_EQ(one.certificate.coords, again.certificate.coords);
}

TEST(MuLower, ExtraStartsAreUsed) {
  // Starting at the best subspace indicator can only help.
  const SupportSet a(4, {0b0000, 0b0001, 0b0010, 0b0011, 0b0100, 0b1000, 0b1100});
  const SupportSet plane(4, {0b0000, 0b0001, 0b0010, 0b0011});
  OptimizerConfig cfg = quick();
  cfg.starts = 0;
  cfg.max_iters = 1;
  const MuEstimate est = mu_lower(a, cfg, {SpectrumVector::indicator(a, plane)});
  EXPECT_GE(est.value, 4.0 - 1e-12);
  EXPECT_THROW(mu_lower(a, cfg, {SpectrumVector::uniform(plane)}), DomainError);
}
