#include "cubenorm/sphere_asymptotics.hpp"

#include "cubenorm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cubenorm {

namespace {

constexpr double kEdgeSlack = 1e-12;

void require_range(double x, double lo, double hi, const char* op) {
  if (!(x >= lo && x <= hi)) {
    throw DomainError(std::string(op) + ": argument " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
}

// Entropy of an argument that is mathematically in [0,1] but may carry
// rounding just outside it.
double entropy_clamped(double u) { return entropy(std::clamp(u, 0.0, 1.0)); }

double log2_3() { return std::log2(3.0); }

}  // namespace

double entropy(double x) {
  require_range(x, 0.0, 1.0, "entropy");
  if (x == 0.0 || x == 1.0) {
    return 0.0;
  }
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double r_of_x(double x) {
  require_range(x, 0.0, 0.5, "r_of_x");
  const double d = 1.0 - 2.0 * x;
  return (3.0 - std::sqrt(1.0 + 8.0 * d * d)) / 8.0;
}

double psi_value(double x) {
  const double r = r_of_x(x);
  const double inner = entropy_clamped((x - r) / (1.0 - 2.0 * r));
  return entropy_clamped(2.0 * r) + 4.0 * r + 2.0 * (1.0 - 2.0 * r) * inner - 2.0 * entropy(x);
}

PsiEvaluation psi(double x, double fd_step) {
  PsiEvaluation out;
  out.x = x;
  out.r = r_of_x(x);
  out.psi = psi_value(x);
  const double h = fd_step;
  if (x - h >= 0.0 && x + h <= 0.5) {
    out.derivative_checks.first = (psi_value(x + h) - psi_value(x - h)) / (2.0 * h);
    out.derivative_checks.second = (psi_value(x + h) - 2.0 * out.psi + psi_value(x - h)) / (h * h);
  } else if (x + 2.0 * h <= 0.5) {
    out.derivative_checks.first = (psi_value(x + h) - out.psi) / h;
    out.derivative_checks.second = (psi_value(x + 2.0 * h) - 2.0 * psi_value(x + h) + out.psi) / (h * h);
  } else {
    out.derivative_checks.first = (out.psi - psi_value(x - h)) / h;
    out.derivative_checks.second = (out.psi - 2.0 * psi_value(x - h) + psi_value(x - 2.0 * h)) / (h * h);
  }
  return out;
}

double phi(double y, SphereParams p) {
  p.validate_lower_half();
  const double a = static_cast<double>(p.k) / p.n;
  require_range(y, 0.0, a, "phi");
  const double rest = 1.0 - 2.0 * y;
  const double tail = rest > 0.0 ? 2.0 * rest * entropy_clamped((a - y) / rest) : 0.0;
  return entropy_clamped(2.0 * y) + 4.0 * y + tail - 2.0 * entropy(a);
}

double phi_derivative(double y, SphereParams p) {
  p.validate_lower_half();
  const double a = static_cast<double>(p.k) / p.n;
  if (!(y > 0.0 && y < a && 2.0 * y < 1.0)) {
    throw DomainError("phi_derivative: y must lie in the open interval (0, k/n)");
  }
  const double rest = 1.0 - 2.0 * y;
  const double half = std::log2(rest / (2.0 * y)) + 2.0 - 2.0 * entropy_clamped((a - y) / rest) -
                      (1.0 - 2.0 * a) / rest * std::log2((1.0 - a - y) / (a - y));
  return 2.0 * half;
}

double f_combine(double x, double y) {
  if (!(x > 0.0 && y > 0.0)) {
    throw DomainError("f_combine: arguments must be positive");
  }
  const double lo = x / 9.0;
  const double hi = 9.0 * x;
  if (y < lo * (1.0 - kEdgeSlack) || y > hi * (1.0 + kEdgeSlack)) {
    throw DomainError("f_combine: requires x/9 <= y <= 9x");
  }
  if (std::abs(y - lo) <= kEdgeSlack * lo || std::abs(y - hi) <= kEdgeSlack * hi) {
    return std::max(x, y);
  }
  const double sx = std::sqrt(x);
  const double sy = std::sqrt(y);
  return 8.0 * x * y / (4.0 * sx * sy - (sx - sy) * (sx - sy));
}

BoundReport psi_concavity_check(double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 0.1)) {
    throw DomainError("psi_concavity_check: grid_step must lie in (0, 0.1]");
  }
  BoundReport rep;
  rep.subject = "psi concavity";
  const double h = grid_step;
  double worst = -INFINITY;
  double worst_x = 0.0;
  int points = 0;
  for (int i = 1;; ++i) {
    const double x = i * h;
    if (x > 0.5 - h + 1e-15) {
      break;
    }
    const double d2 = psi_value(x + h) - 2.0 * psi_value(x) + psi_value(x - h);
    ++points;
    if (d2 > worst) {
      worst = d2;
      worst_x = x;
    }
  }
  rep.add_float("max second difference over " + std::to_string(points) + " points (at x=" + std::to_string(worst_x) +
                    ")",
                worst, Relation::lt, 0.0, "psi concave");

  // At 1/2 the backward secant is used: psi is only defined on [0, 1/2].
  const double e = 1e-4;
  const double slope_half = (psi_value(0.5) - psi_value(0.5 - e)) / e;
  rep.add_float("|psi'(1/2)| backward secant", std::abs(slope_half), Relation::lt, 1e-3, "psi flat at 1/2");
  const double slope_zero = (psi_value(e) - psi_value(0.0)) / e;
  rep.add_float("|psi'(0) - 2 log2 3| forward secant", std::abs(slope_zero - 2.0 * log2_3()), Relation::lt, 5e-3,
                "psi slope at 0");
  return rep;
}

BoundReport psi_linear_bound_check(double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 0.1)) {
    throw DomainError("psi_linear_bound_check: grid_step must lie in (0, 0.1]");
  }
  BoundReport rep;
  rep.subject = "psi linear bound";
  const double slope = 2.0 * log2_3();
  double worst_gap = INFINITY;
  double worst_x = 0.0;
  int points = 0;
  for (int i = 1;; ++i) {
    const double x = i * grid_step;
    if (x >= 0.5 - 1e-15) {
      break;
    }
    const double gap = std::min(slope * x, 1.0) - psi_value(x);
    ++points;
    if (gap < worst_gap) {
      worst_gap = gap;
      worst_x = x;
    }
  }
  rep.add_float("min of min(2 log2(3) x, 1) - psi(x) over " + std::to_string(points) +
                    " interior points (at x=" + std::to_string(worst_x) + ")",
                worst_gap, Relation::gt, 0.0, "psi below linear bound");
  rep.add_float("psi(0)", psi_value(0.0), Relation::le, 1e-15, "psi endpoint 0");
  rep.add_float("psi(1/2)", psi_value(0.5), Relation::approx, 1.0, "psi endpoint 1/2", 1e-12);
  return rep;
}

BoundReport r_identity_check(double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 0.1)) {
    throw DomainError("r_identity_check: grid_step must lie in (0, 0.1]");
  }
  BoundReport rep;
  rep.subject = "r identities";
  double quad_err = 0.0;
  double prod_err = 0.0;
  double deriv_err = 0.0;
  const double h = 1e-6;
  for (int i = 0;; ++i) {
    const double x = std::min(i * grid_step, 0.5);
    const double r = r_of_x(x);
    quad_err = std::max(quad_err, std::abs(0.5 * (3.0 * r - 4.0 * r * r) - x * (1.0 - x)));
    prod_err = std::max(prod_err, std::abs(2.0 * (x - r) * (1.0 - x - r) - r * (1.0 - 2.0 * r)));
    if (x - h >= 0.0 && x + h <= 0.5) {
      const double fd = (r_of_x(x + h) - r_of_x(x - h)) / (2.0 * h);
      deriv_err = std::max(deriv_err, std::abs(fd - (2.0 - 4.0 * x) / (3.0 - 8.0 * r)));
    }
    if (x >= 0.5) {
      break;
    }
  }
  rep.add_float("max |(3r - 4r^2)/2 - x(1-x)|", quad_err, Relation::le, 1e-12, "r quadratic identity");
  rep.add_float("max |2(x-r)(1-x-r) - r(1-2r)|", prod_err, Relation::le, 1e-10, "r product identity");
  rep.add_float("max |r' fd - (2-4x)/(3-8r)|", deriv_err, Relation::le, 1e-4, "r derivative");
  const double r0 = (r_of_x(h) - r_of_x(0.0)) / h;
  rep.add_float("|r'(0) - 2/3|", std::abs(r0 - 2.0 / 3.0), Relation::le, 1e-4, "r derivative at 0");
  return rep;
}

BoundReport phi_derivative_report(const std::vector<SphereParams>& cells) {
  BoundReport rep;
  rep.subject = "phi derivative";
  double max_abs = 0.0;
  double max_fd_err = 0.0;
  int samples = 0;
  for (const SphereParams& p : cells) {
    p.validate_lower_half();
    const double lo = t1(p) / p.n;
    const double hi = std::ceil(t1(p)) / p.n;
    const double a = static_cast<double>(p.k) / p.n;
    for (int j = 0; j <= 8; ++j) {
      const double y = lo + (hi - lo) * j / 8.0;
      if (!(y > 1e-4 && y < a - 1e-4)) {
        continue;
      }
      const double d = phi_derivative(y, p);
      const double h = 1e-7;
      const double fd = (phi(y + h, p) - phi(y - h, p)) / (2.0 * h);
      max_abs = std::max(max_abs, std::abs(d));
      max_fd_err = std::max(max_fd_err, std::abs(d - fd));
      ++samples;
    }
  }
  rep.add_float("max |phi'| over " + std::to_string(samples) + " samples", max_abs, Relation::le, INFINITY,
                "phi' bounded near t1/n", 0.0, Severity::soft);
  rep.add_float("max |phi' closed form - fd|", max_fd_err, Relation::le, 1e-4, "phi' closed form");
  return rep;
}

}  // namespace cubenorm
