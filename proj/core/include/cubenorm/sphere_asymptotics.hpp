#pragma once

// Real-analytic layer: binary entropy, the scaled root r(x), the exponent
// psi(x) with mu(S(n,k)) <= 2^(n psi(k/n)), its fixed-(n,k) companion phi,
// and the homogeneous combine function used in the last-coordinate split.

#include "cubenorm/report.hpp"
#include "cubenorm/sphere_forms.hpp"

namespace cubenorm {

/// Binary entropy in bits; H(0) = H(1) = 0.
double entropy(double x);

/// r(x) = (3 - sqrt(1 + 8(1-2x)^2)) / 8 on [0, 1/2].
double r_of_x(double x);

struct PsiEvaluation {
  double x = 0.0;
  double r = 0.0;
  double psi = 0.0;
  struct Derivatives {
    double first = 0.0;   // finite-difference psi'
    double second = 0.0;  // finite-difference psi''
  } derivative_checks;
};

/// psi(x) = H(2r) + 4r + 2(1-2r) H((x-r)/(1-2r)) - 2H(x), r = r(x).
double psi_value(double x);
PsiEvaluation psi(double x, double fd_step = 1e-5);

/// phi(y) = H(2y) + 4y + 2(1-2y) H((k/n - y)/(1-2y)) - 2H(k/n) on [0, k/n].
double phi(double y, SphereParams p);
/// Closed-form phi'(y).
double phi_derivative(double y, SphereParams p);

/// 8xy / (4 sqrt(xy) - (sqrt x - sqrt y)^2) on x > 0, x/9 <= y <= 9x.
/// On the boundary it equals max(x, y).
double f_combine(double x, double y);

/// Central second differences of psi negative on [step, 1/2 - step]; psi'
/// vanishing at 1/2 and tending to 2 log2 3 at 0.
BoundReport psi_concavity_check(double grid_step);
/// psi(x) < min(2 log2(3) x, 1) on the open interval, equality at endpoints.
BoundReport psi_linear_bound_check(double grid_step);
/// (3r - 4r^2)/2 = x(1-x), 2(x-r)(1-x-r) = r(1-2r), r' = (2-4x)/(3-8r).
BoundReport r_identity_check(double grid_step);
/// Reports max |phi'| over [t1/n, ceil(t1)/n] for the given cells and the
/// agreement of the closed form with finite differences. Report-only bound.
BoundReport phi_derivative_report(const std::vector<SphereParams>& cells);

}  // namespace cubenorm
