#include "cubenorm/errors.hpp"
#include "cubenorm/sphere_asymptotics.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace cubenorm;

namespace {

const double kTwoLog3 = 2 * std::log2(3.0);

void expect_all_hard_pass(const BoundReport& r) {
  EXPECT_TRUE(r.applicable);
  EXPECT_FALSE(r.checks.empty());
  for (const Check& c : r.checks) {
    if (c.severity == Severity::hard) EXPECT_TRUE(c.passed) << r.subject << ": " << c.name;
  }
  EXPECT_TRUE(r.overall());
}

}  // namespace

TEST(Entropy, Values) {
  EXPECT_DOUBLE_EQ(entropy(0.5), 1.0);
  EXPECT_EQ(entropy(0.0), 0.0);
  EXPECT_EQ(entropy(1.0), 0.0);
  EXPECT_NEAR(entropy(0.25), 2 - 0.75 * std::log2(3.0), 1e-15);
  EXPECT_NEAR(entropy(0.25), 0.8112781244591328, 1e-15);
  EXPECT_THROW(entropy(-0.1), DomainError);
  EXPECT_THROW(entropy(1.1), DomainError);
}

TEST(ScaledRoot, Values) {
  EXPECT_EQ(r_of_x(0.0), 0.0);
  EXPECT_DOUBLE_EQ(r_of_x(0.5), 0.25);
  EXPECT_NEAR(r_of_x(0.25), (3 - std::sqrt(3.0)) / 8, 1e-15);
  EXPECT_NEAR(r_of_x(0.25), 0.15849364905389035, 1e-15);
  EXPECT_THROW(r_of_x(0.6), DomainError);
}

TEST(ScaledRoot, IdentitiesAndRange) {
  for (int i = 0; i <= 500; ++i) {
    const double x = i / 1000.0;
    const double r = r_of_x(x);
    EXPECT_GE(r, 0.0);
    EXPECT_LE(r, 0.25);
    EXPECT_LE(r, x + 1e-15);
    EXPECT_NEAR(0.5 * (3 * r - 4 * r * r), x * (1 - x), 1e-12);
    EXPECT_NEAR(2 * (x - r) * (1 - x - r), r * (1 - 2 * r), 1e-12);
  }
}

TEST(ScaledRoot, AgreesWithDominantIndex) {
  for (int n = 2; n <= 512; n += 17) {
    for (int k = 0; 2 * k <= n; ++k) {
      EXPECT_NEAR(r_of_x(static_cast<double>(k) / n), t1({n, k}) / n, 1e-9);
    }
  }
}

TEST(Psi, Values) {
  EXPECT_NEAR(psi_value(0.0), 0.0, 1e-12);
  EXPECT_NEAR(psi_value(0.5), 1.0, 1e-12);
  EXPECT_NEAR(psi_value(0.25), 0.6887218755408673, 1e-12);
  EXPECT_NEAR(psi_value(0.2), 0.5713364204647315, 1e-12);
  EXPECT_NEAR(psi_value(1.0 / 3.0), 0.8515726451398455, 1e-12);
  EXPECT_NEAR(psi_value(0.1), 0.30290430363456333, 1e-12);
  EXPECT_NEAR(std::exp2(10 * psi_value(0.2)), 52.46793861302692, 1e-9);
  EXPECT_THROW(psi_value(-1e-3), DomainError);
  EXPECT_THROW(psi_value(0.51), DomainError);
}

TEST(Psi, EvaluationRecord) {
  const PsiEvaluation e = psi(0.3);
  EXPECT_DOUBLE_EQ(e.x, 0.3);
  EXPECT_DOUBLE_EQ(e.r, r_of_x(0.3));
  EXPECT_DOUBLE_EQ(e.psi, psi_value(0.3));
  EXPECT_GT(e.derivative_checks.first, 0.0);
  EXPECT_LT(e.derivative_checks.second, 0.0);
}

TEST(Psi, ShapeOnGrid) {
  for (int i = 1; i < 500; ++i) {
    const double x = i / 1000.0;
    const double v = psi_value(x);
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, std::min(kTwoLog3 * x, 1.0));
  }
}

TEST(Phi, Values) {
  EXPECT_NEAR(phi(0.0, {12, 4}), 0.0, 1e-15);
  EXPECT_NEAR(phi(t1({12, 4}) / 12, {12, 4}), psi_value(1.0 / 3.0), 1e-10);
  const double a = 4.0 / 12;
  EXPECT_NEAR(phi(a, {12, 4}), entropy(2 * a) + 4 * a - 2 * entropy(a), 1e-12);
  EXPECT_THROW(phi(0.5, {12, 4}), DomainError);
}

TEST(Phi, MatchesPsiAtDominantIndex) {
  for (int n = 2; n <= 512; n += 7) {
    for (int k = 1; 2 * k <= n; k += 3) {
      const SphereParams p{n, k};
      EXPECT_NEAR(phi(t1(p) / n, p), psi_value(static_cast<double>(k) / n), 1e-10) << n << "," << k;
    }
  }
}

TEST(Phi, DerivativeMatchesFiniteDifference) {
  const SphereParams p{40, 13};
  const double h = 1e-6;
  for (double y = 0.05; y < 13.0 / 40 - 0.01; y += 0.02) {
    const double fd = (phi(y + h, p) - phi(y - h, p)) / (2 * h);
    EXPECT_NEAR(phi_derivative(y, p), fd, 1e-4);
  }
  // phi is stationary at t1/n.
  EXPECT_NEAR(phi_derivative(t1(p) / 40, p), 0.0, 1e-9);
}

TEST(Combine, Values) {
  EXPECT_DOUBLE_EQ(f_combine(1, 1), 2.0);
  EXPECT_DOUBLE_EQ(f_combine(1, 9), 9.0);
  EXPECT_DOUBLE_EQ(f_combine(9, 1), 9.0);
  EXPECT_DOUBLE_EQ(f_combine(2, 2), 4.0);
  EXPECT_THROW(f_combine(1, 10), DomainError);
  EXPECT_THROW(f_combine(0, 0), DomainError);
}

TEST(Combine, HomogeneousAndIncreasing) {
  for (double x : {0.5, 1.0, 3.0, 20.0}) {
    for (double s : {0.12, 0.5, 1.0, 2.0, 8.5}) {
      const double y = s * x;
      const double v = f_combine(x, y);
      EXPECT_NEAR(f_combine(3.5 * x, 3.5 * y), 3.5 * v, 1e-12 * v);
      const double h = 1e-7 * x;
      EXPECT_GT(f_combine(x + h, y), v);
      EXPECT_GT(f_combine(x, y + h), v);
      EXPECT_GE(v, std::max(x, y) - 1e-12 * v);
    }
  }
}

TEST(Reports, AllHardChecksPass) {
  expect_all_hard_pass(psi_concavity_check(1e-3));
  expect_all_hard_pass(psi_linear_bound_check(1e-3));
  expect_all_hard_pass(r_identity_check(1e-3));
  expect_all_hard_pass(phi_derivative_report({{64, 16}, {100, 20}, {128, 40}}));
}
