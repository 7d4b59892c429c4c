#include "cubenorm/errors.hpp"
#include "cubenorm/sphere_forms.hpp"
#include "cubenorm/additive.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace cubenorm;

namespace {

/// s_t straight from the definition with Pascal-rule binomials.
BigRational s_t_oracle(int n, int k, int t) {
  if (2 * t > n) return 0;
  const BigInt inner = oracle::pascal(2 * t, t) * oracle::pascal(n - 2 * t, k - t);
  const BigInt nk = oracle::pascal(n, k);
  return make_rational(oracle::pascal(n, 2 * t) * inner * inner, nk * nk);
}

}  // namespace

TEST(SphereParams, Validation) {
  EXPECT_THROW(SphereParams({0, 0}).validate(), DomainError);
  EXPECT_THROW(SphereParams({4, 5}).validate(), DomainError);
  EXPECT_THROW(SphereParams({4, -1}).validate(), DomainError);
  EXPECT_THROW(SphereParams({5, 3}).validate_lower_half(), DomainError);
  EXPECT_NO_THROW(SphereParams({5, 2}).validate_lower_half());
}

TEST(SphereSummands, Examples) {
  EXPECT_EQ(s_t_exact({9, 4}, 0), BigRational(1));
  EXPECT_EQ(s_t_exact({3, 1}, 1), make_rational(4, 3));
  EXPECT_EQ(s_t_exact({4, 2}, 2), BigRational(1));
  EXPECT_THROW(s_t_exact({4, 2}, 3), DomainError);
  EXPECT_THROW(s_t_exact({4, 2}, -1), DomainError);
}

TEST(SphereSummands, MatchDefinition) {
  for (int n = 1; n <= 30; ++n)
    for (int k = 0; k <= n; ++k)
      for (int t = 0; t <= k; ++t) EXPECT_EQ(s_t_exact({n, k}, t), s_t_oracle(n, k, t));
}

TEST(EnergyRatio, Examples) {
  EXPECT_EQ(r_exact({7, 0}), BigRational(1));
  EXPECT_EQ(r_exact({3, 1}), make_rational(7, 3));
  EXPECT_EQ(r_exact({4, 2}), make_rational(14, 3));
  // Independently computed values.
  EXPECT_EQ(r_exact({6, 1}), make_rational(8, 3));
  EXPECT_EQ(r_exact({10, 3}), make_rational(533, 15));
  EXPECT_EQ(r_exact({12, 4}), make_rational(68179, 495));
  EXPECT_EQ(r_exact({20, 5}), make_rational(4693315, 3876));
}

TEST(EnergyRatio, EqualsBruteForceOnSpheres) {
  for (int n = 1; n <= 9; ++n) {
    for (int k = 1; 2 * k <= n; ++k) {
      const SupportSet s = SupportSet::sphere(n, k);
      const BigInt sz = to_big(s.size());
      EXPECT_EQ(r_exact({n, k}), make_rational(to_big(oracle::quadruple_count(s)), sz * sz));
    }
  }
}

TEST(EnergyRatio, MonotoneInRadius) {
  for (int n = 2; n <= 40; ++n) {
    for (int k = 1; 2 * k <= n; ++k) {
      for (int t = 0; t < k; ++t) EXPECT_LE(s_t_exact({n, k - 1}, t), s_t_exact({n, k}, t));
      EXPECT_LE(r_exact({n, k - 1}), r_exact({n, k}));
    }
  }
}

TEST(SummandRatio, Examples) {
  EXPECT_EQ(ratio_st({3, 1}, 0), make_rational(4, 3));
  EXPECT_EQ(ratio_st({4, 2}, 0), make_rational(8, 3));
  EXPECT_THROW(ratio_st({4, 2}, 2), DomainError);
}

TEST(SummandRatio, ClosedFormEqualsQuotient) {
  for (int n = 1; n <= 30; ++n)
    for (int k = 1; k <= n; ++k)
      for (int t = 0; t < k; ++t) {
        const BigRational st = s_t_exact({n, k}, t);
        if (st == 0) continue;
        EXPECT_EQ(ratio_st({n, k}, t), s_t_exact({n, k}, t + 1) / st) << n << "," << k << "," << t;
      }
}

TEST(DominantIndex, RootsAndRange) {
  EXPECT_DOUBLE_EQ(t1({12, 6}), 3.0);
  EXPECT_NEAR(t1({12, 4}), (9 - std::sqrt(17.0)) / 2, 1e-12);
  EXPECT_NEAR(t1({12, 4}), 2.4384471871911697, 1e-12);
  for (int n = 2; n <= 200; ++n) {
    for (int k = 1; 2 * k <= n; ++k) {
      const double a = t1({n, k});
      const double b = t2({n, k});
      const double q = 2.0 * k * (n - k);
      EXPECT_NEAR(4 * a * a - 3.0 * n * a + q, 0.0, 1e-9 * q);
      EXPECT_NEAR(4 * b * b - 3.0 * n * b + q, 0.0, 1e-9 * q);
      EXPECT_LE(a, b);
      EXPECT_GE(a, k / 3.0 - 1e-12);
      EXPECT_LE(a, 11.0 * k / 12.0 + 1e-12);
    }
  }
}

TEST(DominantIndex, ExactComparison) {
  // t1(12,4) = (9 - sqrt 17)/2 ~ 2.43845
  EXPECT_EQ(compare_t1({12, 4}, make_rational(243, 100)), 1);
  EXPECT_EQ(compare_t1({12, 4}, make_rational(244, 100)), -1);
  EXPECT_EQ(compare_t1({12, 6}, BigRational(3)), 0);
  EXPECT_EQ(compare_t1({12, 6}, BigRational(100)), -1);
  EXPECT_EQ(compare_t1({12, 6}, BigRational(-1)), 1);
  for (int n = 2; n <= 60; ++n) {
    for (int k = 1; 2 * k <= n; ++k) {
      const double v = t1({n, k});
      for (int t = 0; t <= k; ++t) {
        if (std::abs(v - t) < 1e-9) continue;
        EXPECT_EQ(compare_t1({n, k}, BigRational(t)), v > t ? 1 : -1);
      }
    }
  }
}

TEST(Argmax, ExamplesAndBruteForce) {
  EXPECT_EQ(argmax_st({3, 1}), 1);
  EXPECT_EQ(argmax_st({4, 2}), 1);
  for (int n = 2; n <= 40; ++n) {
    for (int k = 1; k <= n; ++k) {
      int best = 0;
      for (int t = 1; t <= k; ++t)
        if (s_t_oracle(n, k, t) > s_t_oracle(n, k, best)) best = t;
      EXPECT_EQ(argmax_st({n, k}), best);
    }
  }
}

TEST(SumBound, Examples) {
  EXPECT_EQ(sphere_sum_bound(0), 1);
  EXPECT_EQ(sphere_sum_bound(1), 3);
  EXPECT_EQ(sphere_sum_bound(2), 15);
  EXPECT_EQ(sphere_sum_bound(3), 93);
}

TEST(SumBound, DominatesEnergyRatio) {
  for (int n = 2; n <= 40; ++n)
    for (int k = 0; 2 * k <= n; ++k) EXPECT_LE(r_exact({n, k}), BigRational(sphere_sum_bound(k)));
}

TEST(SmallRadiusEstimate, Examples) {
  EXPECT_DOUBLE_EQ(small_k_lower({50, 0}), 1.0);
  EXPECT_LE(small_k_lower({100, 3}), to_double(r_exact({100, 3})));
  const double ratio = to_double(r_exact({400, 5})) / small_k_lower({400, 5});
  EXPECT_GE(ratio, 1.0);
  EXPECT_LE(ratio, 1.2);
}

TEST(SphereTable, RowsAndCumulative) {
  const auto rows = sphere_table({4, 2});
  ASSERT_EQ(rows.size(), 3U);
  EXPECT_EQ(rows[0].s_t, BigRational(1));
  EXPECT_EQ(rows[1].s_t, make_rational(8, 3));
  EXPECT_EQ(rows[2].s_t, BigRational(1));
  EXPECT_FALSE(rows[0].ratio_to_prev);
  EXPECT_EQ(*rows[1].ratio_to_prev, make_rational(8, 3));
  EXPECT_EQ(rows[2].cumulative, make_rational(14, 3));

  const auto zero = sphere_table({9, 0});
  ASSERT_EQ(zero.size(), 1U);
  EXPECT_EQ(zero[0].s_t, BigRational(1));

  const auto window = sphere_table({20, 5}, 2, 3);
  ASSERT_EQ(window.size(), 2U);
  EXPECT_EQ(window[0].t, 2);
  EXPECT_EQ(window[1].cumulative, s_t_exact({20, 5}, 0) + s_t_exact({20, 5}, 1) + s_t_exact({20, 5}, 2) +
                                      s_t_exact({20, 5}, 3));
}

TEST(RatioInequalities, HoldOnTestedRange) {
  for (int n : {64, 72, 100, 128}) {
    for (int k = 1; 2 * k <= n; ++k) {
      const SphereParams p{n, k};
      if (!in_central_range(p)) continue;
      EXPECT_TRUE(check_ratio_growth(p).holds()) << check_ratio_growth(p).first_violation;
      EXPECT_TRUE(check_ratio_decay(p).holds()) << check_ratio_decay(p).first_violation;
      EXPECT_TRUE(argmax_localized(p));
      EXPECT_TRUE(central_window_dominates(p));
    }
  }
}

TEST(RatioInequalities, GrowthScanCountsInstances) {
  const InequalityTally tally = check_ratio_growth({128, 40});
  EXPECT_GT(tally.checked, 0U);
  EXPECT_EQ(tally.violations, 0U);
  EXPECT_TRUE(tally.first_violation.empty());
}

TEST(CentralRange, Bounds) {
  // n = 64: n / log2 n = 64/6 ~ 10.67, so k in [11, 21].
  EXPECT_FALSE(in_central_range({64, 10}));
  EXPECT_TRUE(in_central_range({64, 11}));
  EXPECT_TRUE(in_central_range({64, 21}));
  EXPECT_FALSE(in_central_range({64, 22}));
}
