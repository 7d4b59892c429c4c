// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Every criterion checks its own wall-clock budget as well as its tolerance.

#include "cubenorm/bounds.hpp"
#include "cubenorm/quartic.hpp"
#include "cubenorm/sampling.hpp"
#include "cubenorm/sphere_asymptotics.hpp"
#include "cubenorm/sphere_forms.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace cubenorm;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  std::function<Outcome()> body;
};

double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b);
  return buf;
}

SupportSet random_small_set(Rng& rng, int n_max, std::size_t size_max) {
  const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n_max));
  const std::size_t cap = std::min<std::size_t>(size_max, std::size_t{1} << n);
  return random_support(rng, n, 1 + rng() % cap);
}

Outcome energy_closed_form() {
  Outcome out;
  int cells = 0;
  for (int n = 2; n <= 12; ++n) {
    for (int k = 1; 2 * k <= n; ++k) {
      const SupportSet s = SupportSet::sphere(n, k);
      BigInt energy = 0;
      for (const auto& [x, c] : oracle::pair_counts(s)) energy += to_big(c) * to_big(c);
      const BigInt size = to_big(s.size());
      if (make_rational(energy, size * size) != r_exact({n, k})) {
        out.fail("mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k));
      }
      ++cells;
    }
  }
  out.detail = out.ok ? std::to_string(cells) + " cells exact" : out.detail;
  return out;
}

Outcome two_path_agreement() {
  Outcome out;
  Rng rng(1001);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const SupportSet a = random_small_set(rng, 10, 40);
    const SpectrumVector y = random_coefficients(rng, a).normalized();
    const double direct = oracle::fourth_moment(a, y.coords);
    worst = std::max(worst, std::abs(big_f(y) - direct) / direct);
  }
  if (worst > 1e-10) out.fail(fmt("max relative error %.3g", worst));
  else out.detail = fmt("max relative error %.3g", worst);
  return out;
}

Outcome gradient_correctness() {
  Outcome out;
  Rng rng(1002);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const SupportSet a = random_small_set(rng, 8, 24);
    const SpectrumVector y = random_coefficients(rng, a).normalized();
    const auto fn = [&](const std::vector<double>& v) { return oracle::fourth_moment(a, v); };
    const std::vector<double> fd = oracle::numeric_gradient(fn, y.coords, 1e-5);
    const SpectrumVector g = big_f_grad(y);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < fd.size(); ++j) {
      num = std::max(num, std::abs(g.coords[j] - fd[j]));
      den = std::max(den, std::abs(fd[j]));
    }
    worst = std::max(worst, num / den);
  }
  if (worst > 1e-6) out.fail(fmt("max relative error %.3g", worst));
  else out.detail = fmt("max relative error %.3g", worst);
  return out;
}

Outcome bracket_soundness() {
  Outcome out;
  Rng rng(1003);
  double worst = -INFINITY;
  for (int i = 0; i < 200; ++i) {
    const SupportSet a = random_small_set(rng, 10, 40);
    OptimizerConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(i);
    const double lower = mu_lower(a, cfg).value;
    const double upper = mu_upper(a).best;
    worst = std::max(worst, lower - upper);
    if (lower > upper + 1e-8) out.fail(fmt("mu_lower %.12g above mu_upper %.12g", lower, upper));
  }
  for (int d = 0; d <= 3; ++d) {
    std::vector<Mask> gens;
    for (int i = 0; i < d; ++i) gens.push_back((Mask{0b101} << i) ^ (Mask{1} << (6 + i)));
    const SupportSet sub = SupportSet::span(10, gens);
    const double size = std::ldexp(1.0, d);
    const double lower = mu_lower(sub).value;
    const double upper = mu_upper(sub).best;
    if (lower < size - 1e-6 || lower > size + 1e-8) out.fail(fmt("subspace 2^%g: mu_lower %.12g", d, lower));
    if (upper != size) out.fail(fmt("subspace 2^%g: mu_upper %.12g", d, upper));
  }
  if (out.ok) out.detail = fmt("max(lower - upper) %.3g; subspaces tight", worst);
  return out;
}

Outcome sphere_small_cases() {
  Outcome out;
  for (int n = 2; n <= 8; ++n) {
    const double v = mu_lower(SupportSet::sphere(n, 1)).value;
    if (v < 3.0 - 2.0 / n - 1e-9 || v > 3.0) out.fail(fmt("n=%g: mu_lower %.15g", n, v));
    const BoundSet up = mu_upper(SupportSet::sphere(n, 1));
    if (!up.sphere_sum_bound || *up.sphere_sum_bound != 3) out.fail(fmt("n=%g: sum bound for k=1 is not 3", n));
  }
  for (int n = 4; n <= 8; ++n) {
    const BoundSet up = mu_upper(SupportSet::sphere(n, 2));
    if (!up.sphere_sum_bound || *up.sphere_sum_bound != 15) out.fail(fmt("n=%g: sum bound for k=2 is not 15", n));
  }
  if (out.ok) out.detail = "S(n,1) within [3 - 2/n, 3], sum bounds 3 and 15";
  return out;
}

Outcome psi_shape() {
  Outcome out;
  if (std::abs(psi_value(0.0)) > 1e-12) out.fail(fmt("psi(0) = %.3g", psi_value(0.0)));
  if (std::abs(psi_value(0.5) - 1.0) > 1e-12) out.fail(fmt("psi(1/2) = %.17g", psi_value(0.5)));
  const double h = 1e-3;
  const double slope = 2 * std::log2(3.0);
  double max_second = -INFINITY;
  double min_gap = INFINITY;
  for (int i = 1; i < 500; ++i) {
    const double x = i * h;
    const double v = psi_value(x);
    max_second = std::max(max_second, psi_value(x - h) - 2 * v + psi_value(x + h));
    min_gap = std::min(min_gap, std::min(slope * x, 1.0) - v);
  }
  if (!(max_second < 0)) out.fail(fmt("second difference %.3g not negative", max_second));
  if (!(min_gap > 0)) out.fail(fmt("linear bound gap %.3g not positive", min_gap));
  if (!psi_concavity_check(h).overall()) out.fail("concavity report has hard failures");
  if (!psi_linear_bound_check(h).overall()) out.fail("linear-bound report has hard failures");
  if (out.ok) out.detail = fmt("max second difference %.3g, min gap %.3g", max_second, min_gap);
  return out;
}

Outcome analytic_identities() {
  Outcome out;
  double worst = 0.0;
  for (int i = 0; i <= 5000; ++i) {
    const double x = i / 10000.0;
    const double r = r_of_x(x);
    worst = std::max(worst, std::abs(0.5 * (3 * r - 4 * r * r) - x * (1 - x)));
    worst = std::max(worst, std::abs(2 * (x - r) * (1 - x - r) - r * (1 - 2 * r)));
  }
  if (worst > 1e-10) out.fail(fmt("identity residual %.3g", worst));

  Rng rng(1007);
  double worst_phi = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int n = 2 + static_cast<int>(rng() % 511);
    const int k = static_cast<int>(rng() % static_cast<std::uint64_t>(n / 2 + 1));
    const SphereParams p{n, k};
    worst_phi = std::max(worst_phi, std::abs(phi(t1(p) / n, p) - psi_value(static_cast<double>(k) / n)));
  }
  if (worst_phi > 1e-10) out.fail(fmt("phi(t1/n) - psi(k/n) up to %.3g", worst_phi));
  if (out.ok) out.detail = fmt("identity residual %.3g, phi/psi residual %.3g", worst, worst_phi);
  return out;
}

Outcome ratio_inequalities() {
  Outcome out;
  std::uint64_t instances = 0;
  int cells = 0;
  for (int n = 64; n <= 128; ++n) {
    for (int k = 1; 2 * k <= n; ++k) {
      const SphereParams p{n, k};
      if (!in_central_range(p)) continue;
      ++cells;
      const InequalityTally grow = check_ratio_growth(p);
      const InequalityTally decay = check_ratio_decay(p);
      instances += grow.checked + decay.checked;
      if (!grow.holds()) out.fail("growth: " + grow.first_violation);
      if (!decay.holds()) out.fail("decay: " + decay.first_violation);
      if (!argmax_localized(p)) out.fail("argmax not localized at n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  }
  if (out.ok) out.detail = std::to_string(cells) + " cells, " + std::to_string(instances) + " exact inequalities";
  return out;
}

Outcome exponent_desk_checks() {
  Outcome out;
  double worst_upper = 0.0;  // max r / 2^(n psi)
  double worst_lower = 0.0;  // max 2^(n psi) / (k^1.5 r)
  for (int n = 1; n <= 256; ++n) {
    for (int k = 0; 2 * k <= n; ++k) {
      const double r = to_double(r_exact({n, k}));
      const double bound = std::exp2(n * psi_value(static_cast<double>(k) / n));
      worst_upper = std::max(worst_upper, r / bound);
      if (r > bound * (1 + 1e-9)) out.fail(fmt("r above 2^(n psi) at n=%g k=%g", n, k));
      if (k >= 8) {
        const double scale = bound / (std::pow(k, 1.5) * r);
        worst_lower = std::max(worst_lower, scale);
        if (bound > 8 * std::pow(k, 1.5) * r) out.fail(fmt("2^(n psi) above 8 k^1.5 r at n=%g k=%g", n, k));
      }
    }
  }
  if (out.ok) out.detail = fmt("max r/2^(n psi) %.6g, max 2^(n psi)/(k^1.5 r) %.4g", worst_upper, worst_lower);
  return out;
}

Outcome uncertainty_and_sumsets() {
  Outcome out;
  const std::vector<Mask> gens{0b0011, 0b0101};
  const CubeFunction plane = synthesize(embed(SpectrumVector::uniform(SupportSet::span(4, gens))));
  const std::size_t s = numeric_support(plane).size();
  const std::size_t a = numeric_support(analyze(plane)).size();
  if (s * a != 16) out.fail("subspace product " + std::to_string(s * a) + " != 16");
  if (!uncertainty_report(plane).overall()) out.fail("uncertainty report fails on the subspace case");

  Rng rng(1010);
  int admissible = 0;
  int draws = 0;
  while (admissible < 100 && draws < 10000) {
    ++draws;
    const int n = 8 + static_cast<int>(rng() % 3);
    const SupportSet freq = random_support(rng, n, 1 + rng() % 6);
    const CubeFunction f = random_function_on(rng, freq);
    const SupportSet b = random_support(rng, n, 1 + rng() % 16);
    const double delta = 0.05 + 0.9 * std::uniform_real_distribution<double>(0, 1)(rng);
    if (mu_upper(freq).best * static_cast<double>(b.size()) > std::exp2((1 - delta) * n)) continue;
    ++admissible;
    double mass = 0.0;
    for (Mask x : b) mass += f[x] * f[x];
    mass = std::ldexp(mass, -n);
    const double energy = raw_moments(f).m2;
    if (mass > std::exp2(-delta * n / 2) * energy * (1 + 1e-12)) out.fail(fmt("mass %.6g above bound at n=%g", mass, n));
    if (!restricted_mass_check(f, b, delta).overall()) out.fail("restricted mass report failed");
  }
  if (admissible < 100) out.fail("only " + std::to_string(admissible) + " admissible instances drawn");

  for (int i = 0; i < 100; ++i) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const int k1 = static_cast<int>(rng() % static_cast<std::uint64_t>(n / 2 + 1));
    const int k2 = static_cast<int>(rng() % static_cast<std::uint64_t>(n / 2 + 1));
    const SupportSet ball1 = SupportSet::ball(n, k1);
    const SupportSet ball2 = SupportSet::ball(n, k2);
    const SupportSet b = random_subset(rng, ball1, 1 + rng() % ball1.size());
    const SupportSet c = random_subset(rng, ball2, 1 + rng() % ball2.size());
    if (!sumset_bound_report(b, c, k1, k2).overall()) {
      out.fail("sumset bounds fail at n=" + std::to_string(n));
    }
  }
  if (out.ok) out.detail = "subspace product 16 = 2^4; 100 mass and 100 sumset instances";
  return out;
}

Outcome split_and_tensor() {
  Outcome out;
  Rng rng(1011);
  double worst_split = 0.0;
  for (int i = 0; i < 100; ++i) {
    const CubeFunction f = random_function(rng, 1 + static_cast<int>(rng() % 10));
    const SplitPair s = decompose_last(f);
    const SplitMoments m = split_moments(s.g0, s.g1);
    const double m4 = raw_moments(f).m4;
    worst_split = std::max(worst_split, std::abs(m4 - (m.g0_m4 + 6 * m.cross + m.g1_m4)) / m4);
  }
  if (worst_split > 1e-10) out.fail(fmt("split identity error %.3g", worst_split));

  double worst_tensor = 0.0;
  for (int n = 1; n <= 5; ++n) {
    for (int m : {2, 3}) {
      if (n * m > 15) continue;
      const CubeFunction f = random_function(rng, n);
      const RawMoments small = raw_moments(f);
      const RawMoments big = raw_moments(tensor_power(f, m));
      worst_tensor = std::max(worst_tensor, rel_err(big.m2, std::pow(small.m2, m)));
      worst_tensor = std::max(worst_tensor, rel_err(big.m4, std::pow(small.m4, m)));
    }
  }
  if (worst_tensor > 1e-9) out.fail(fmt("tensor moment error %.3g", worst_tensor));

  int interior = 0;
  double worst_curve = 0.0;
  while (interior < 50) {
    const CubeFunction g0 = random_function(rng, 3);
    const CubeFunction g1 = random_function(rng, 3);
    const SplitMoments m = split_moments(g0, g1);
    if (!g_curve_argmax(m)) continue;
    ++interior;
    double best = g_curve(m, 0.0);
    double best_x = 0.0;
    for (int i = -3000; i <= 3000; ++i) {
      const double x = std::pow(10.0, i / 1000.0);
      if (const double v = g_curve(m, x); v > best) {
        best = v;
        best_x = x;
      }
    }
    // Golden-section refinement inside the best grid cell.
    double lo = best_x / 1.003;
    double hi = best_x * 1.003;
    const double ratio = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 200; ++it) {
      const double a = hi - ratio * (hi - lo);
      const double b = lo + ratio * (hi - lo);
      if (g_curve(m, a) < g_curve(m, b)) {
        lo = a;
      } else {
        hi = b;
      }
    }
    best = std::max(best, g_curve(m, (lo + hi) / 2));
    worst_curve = std::max(worst_curve, std::abs(best - g_curve_max(m)));
  }
  if (worst_curve > 1e-8) out.fail(fmt("g_curve_max vs grid search %.3g", worst_curve));
  if (out.ok) {
    out.detail = fmt("split %.3g, tensor %.3g", worst_split, worst_tensor) + fmt(", curve %.3g", worst_curve);
  }
  return out;
}

std::string serialize(const std::vector<ConjectureRecord>& records) {
  std::ostringstream os;
  char buf[96];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g", r.mu_est, r.gap, r.upper_gap);
    os << r.n << ' ' << r.k << ' ' << buf << ' ' << rational_string(r.energy_ratio) << ' ' << r.flag;
    if (r.certificate) {
      for (double v : r.certificate->coords) {
        std::snprintf(buf, sizeof(buf), " %.17g", v);
        os << buf;
      }
    }
    os << '\n';
  }
  return os.str();
}

Outcome scan_determinism() {
  Outcome out;
  OptimizerConfig cfg;
  cfg.seed = 12;
  const auto first = conjecture_scan(8, cfg);
  const auto second = conjecture_scan(8, cfg);
  double min_gap = INFINITY;
  for (const auto& r : first) {
    min_gap = std::min(min_gap, r.gap);
    if (r.gap < -1e-8) out.fail(fmt("gap %.3g below -1e-8", r.gap));
  }
  if (serialize(first) != serialize(second)) out.fail("repeated scans differ");
  if (out.ok) out.detail = std::to_string(first.size()) + " records, min gap " + fmt("%.3g", min_gap);
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "energy closed form equals brute force, n <= 12", 60, energy_closed_form},
      {2, "pair and transform evaluations of F agree", 30, two_path_agreement},
      {3, "analytic gradient matches central differences", 30, gradient_correctness},
      {4, "estimator stays inside the bound bracket", 300, bracket_soundness},
      {5, "first-level spheres and sum bounds", 120, sphere_small_cases},
      {6, "psi endpoints, concavity and linear bound", 10, psi_shape},
      {7, "scaled-root identities and phi at t1", 30, analytic_identities},
      {8, "exact summand-ratio inequalities, n in [64, 128]", 300, ratio_inequalities},
      {9, "exponent bound against the energy ratio, n <= 256", 300, exponent_desk_checks},
      {10, "uncertainty, restricted mass and sumset bounds", 180, uncertainty_and_sumsets},
      {11, "split and tensorization identities, curve maximum", 180, split_and_tensor},
      {12, "sphere scan to n = 8 is deterministic with nonnegative gaps", 600, scan_determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) o.fail(fmt("took %.1f s, budget %.0f s", secs, c.budget_seconds));
    failures += o.ok ? 0 : 1;
    std::printf("%s criterion %2d: %s [%.2f s] %s\n", o.ok ? "PASS" : "FAIL", c.id, c.title, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
