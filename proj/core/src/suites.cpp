#include "cubenorm/suites.hpp"

#include "cubenorm/additive.hpp"
#include "cubenorm/bounds.hpp"
#include "cubenorm/sampling.hpp"
#include "cubenorm/sphere_asymptotics.hpp"
#include "cubenorm/sphere_forms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace cubenorm {

namespace {

// Each suite reseeds from (seed, salt) so suites are independent of the order
// in which "all" runs them.
Rng suite_rng(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  return Rng(seq);
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

std::string cell(int n, int k) { return "(" + std::to_string(n) + "," + std::to_string(k) + ")"; }

SupportSet subspace(int n, int dim) {
  std::vector<Mask> gens;
  for (int i = 0; i < dim; ++i) {
    gens.push_back(Mask{1} << i);
  }
  return SupportSet::span(n, gens);
}

// ---------------------------------------------------------------- core

std::vector<BoundReport> core_suite(const SuiteConfig& cfg) {
  Rng rng = suite_rng(cfg.seed, 1);
  std::vector<BoundReport> out;

  BoundReport transforms;
  transforms.subject = "transforms on random functions";
  double round_trip = 0.0;
  double parseval = 0.0;
  double naive = 0.0;
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 3 + trial;
    const CubeFunction f = random_function(rng, n);
    const Spectrum s = analyze(f);
    const CubeFunction back = synthesize(s);
    for (Mask x = 0; x < f.size(); ++x) {
      round_trip = std::max(round_trip, std::abs(back[x] - f[x]));
    }
    double spec2 = 0.0;
    for (double v : s.values()) {
      spec2 += v * v;
    }
    parseval = std::max(parseval, rel_err(spec2, raw_moments(f).m2));
    const Spectrum slow = reference::analyze_naive(f);
    for (Mask a = 0; a < s.size(); ++a) {
      naive = std::max(naive, std::abs(slow[a] - s[a]));
    }
  }
  transforms.add_float("max |synthesize(analyze f) - f|", round_trip, Relation::le, 1e-12, "transform inverse");
  transforms.add_float("max relative Parseval error", parseval, Relation::le, 1e-12, "Parseval");
  transforms.add_float("max |fast - direct analysis|", naive, Relation::le, 1e-12, "transform definition");
  out.push_back(std::move(transforms));

  BoundReport quartic;
  quartic.subject = "quartic form on random (A, y)";
  double two_path = 0.0;
  double grad_err = 0.0;
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 4 + trial % 5;
    std::uniform_int_distribution<std::size_t> size_pick(1, std::min<std::size_t>(24, std::size_t{1} << n));
    const SupportSet a = random_support(rng, n, size_pick(rng));
    const SpectrumVector y = random_coefficients(rng, a);
    two_path = std::max(two_path, rel_err(big_f(y), big_f_transform(y)));
    const SpectrumVector g = big_f_grad(y);
    const QuarticForm pairs(a, QuarticForm::Route::pairs);
    std::vector<double> g2(a.size());
    pairs.value_and_gradient(y.coords, g2);
    for (std::size_t i = 0; i < a.size(); ++i) {
      grad_err = std::max(grad_err, std::abs(g.coords[i] - g2[i]) / std::max(1.0, std::abs(g2[i])));
    }
  }
  quartic.add_float("max relative |F pairs - E f^4|", two_path, Relation::le, 1e-10, "quartic two paths");
  quartic.add_float("max |grad pairs - grad transform|", grad_err, Relation::le, 1e-10, "quartic gradient");
  out.push_back(std::move(quartic));

  BoundReport split;
  split.subject = "last-coordinate split on random functions";
  double split_err = 0.0;
  double recombine_err = 0.0;
  for (int trial = 0; trial < 8; ++trial) {
    const CubeFunction f = random_function(rng, 2 + trial % 6);
    const SplitPair parts = decompose_last(f);
    const SplitMoments m = split_moments(parts.g0, parts.g1);
    split_err = std::max(split_err, rel_err(raw_moments(f).m4, m.g0_m4 + 6.0 * m.cross + m.g1_m4));
    const CubeFunction back = recombine_last(parts.g0, parts.g1);
    for (Mask x = 0; x < f.size(); ++x) {
      recombine_err = std::max(recombine_err, std::abs(back[x] - f[x]));
    }
  }
  split.add_float("max relative |E f^4 - (E g0^4 + 6 E g0^2 g1^2 + E g1^4)|", split_err, Relation::le, 1e-10,
                  "split fourth moment");
  split.add_float("max |recombine(decompose f) - f|", recombine_err, Relation::le, 1e-12, "split inverse");
  out.push_back(std::move(split));

  out.push_back(uncertainty_report(synthesize(embed(SpectrumVector::uniform(subspace(6, 3))))));
  out.push_back(uncertainty_report(random_function_on(rng, random_support(rng, 8, 12))));
  return out;
}

// ------------------------------------------------------------ additive

std::vector<BoundReport> additive_suite(const SuiteConfig& cfg) {
  Rng rng = suite_rng(cfg.seed, 2);
  std::vector<BoundReport> out;

  BoundReport counts;
  counts.subject = "pair multiplicities on random sets";
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 3 + trial % 6;
    std::uniform_int_distribution<std::size_t> size_pick(1, std::min<std::size_t>(20, std::size_t{1} << n));
    const SupportSet a = random_support(rng, n, size_pick(rng));
    const std::string tag = "#" + std::to_string(trial) + " ";
    const MultiplicityTable t = pair_multiplicities_enumerated(a);
    const bool same = t == pair_multiplicities_dense(a);
    counts.add(tag + "enumerated == dense counts", same ? 1.0 : 0.0, Relation::eq, 1.0, same, "representation counts");
    const BigRational e(additive_energy(t));
    const BigRational s = BigRational(to_big(a.size()));
    counts.add_exact(tag + "E(A) >= |A|^2", e, Relation::ge, s * s, "energy range");
    counts.add_exact(tag + "E(A) <= |A|^3", e, Relation::le, s * s * s, "energy range");
    counts.add_exact(tag + "m(A) <= |A| + 1", BigRational(to_big(m_bound(t))), Relation::le, s + 1,
                     "multiplicity range");
    const HereditaryResult h = hereditary_energy(a, cfg.exact_limit);
    counts.add_exact(tag + "hereditary ratio >= E(A)/|A|^2", h.ratio, Relation::ge, e / (s * s),
                     "hereditary dominates");
  }
  out.push_back(std::move(counts));

  BoundReport spheres;
  spheres.subject = "sphere energy closed form";
  for (int n = 1; n <= 8; ++n) {
    for (int k = 1; 2 * k <= n; ++k) {
      spheres.add_exact("E(S" + cell(n, k) + ")/|S|^2 == r" + cell(n, k), energy_ratio(SupportSet::sphere(n, k)),
                        Relation::eq, r_exact({n, k}), "sphere energy");
    }
  }
  for (int d = 0; d <= 4; ++d) {
    const SupportSet v = subspace(6, d);
    const BigInt sz = to_big(v.size());
    spheres.add_exact("E(V) == |V|^3, dim " + std::to_string(d), BigRational(additive_energy(v)), Relation::eq,
                      BigRational(sz * sz * sz), "subspace energy");
  }
  out.push_back(std::move(spheres));
  return out;
}

// -------------------------------------------------------------- sphere

std::vector<BoundReport> sphere_suite(const SuiteConfig&) {
  std::vector<BoundReport> out;

  BoundReport forms;
  forms.subject = "exact sphere summands";
  std::uint64_t ratio_mismatch = 0;
  std::uint64_t monotone_fail = 0;
  std::uint64_t t1_range_fail = 0;
  double root_residual = 0.0;
  for (int n = 2; n <= 24; ++n) {
    for (int k = 1; k <= n; ++k) {
      for (int t = 0; t < k; ++t) {
        const BigRational here = s_t_exact({n, k}, t);
        if (here != 0 && ratio_st({n, k}, t) != s_t_exact({n, k}, t + 1) / here) {
          ++ratio_mismatch;
        }
        if (2 * k <= n && s_t_exact({n, k - 1}, t) > here) {
          ++monotone_fail;
        }
      }
      if (2 * k <= n) {
        const double r = t1({n, k});
        root_residual = std::max(root_residual, std::abs(4 * r * r - 3.0 * n * r + 2.0 * k * (n - k)) / (n * n));
        if (r < k / 3.0 - 1e-12 || r > 11.0 * k / 12.0 + 1e-12) {
          ++t1_range_fail;
        }
      }
    }
  }
  forms.add_exact("closed-form ratio mismatches, n <= 24", BigRational(to_big(ratio_mismatch)), Relation::eq,
                  BigRational(0), "ratio closed form");
  forms.add_exact("s_t(n,k-1) > s_t(n,k) occurrences, n <= 24", BigRational(to_big(monotone_fail)), Relation::eq,
                  BigRational(0), "summands monotone in k");
  forms.add_exact("t1 outside [k/3, 11k/12], n <= 24", BigRational(to_big(t1_range_fail)), Relation::eq,
                  BigRational(0), "t1 range");
  forms.add_float("max scaled |q(t1)|", root_residual, Relation::le, 1e-12, "t1 root");
  forms.add_exact("sphere_sum_bound(1)", BigRational(sphere_sum_bound(1)), Relation::eq, BigRational(3),
                  "partition bound");
  forms.add_exact("sphere_sum_bound(2)", BigRational(sphere_sum_bound(2)), Relation::eq, BigRational(15),
                  "partition bound");
  out.push_back(std::move(forms));

  BoundReport ratio_checks;
  ratio_checks.subject = "ratio growth and decay, central range";
  for (int n : {64, 80, 96}) {
    for (int k = 1; 2 * k <= n; ++k) {
      const SphereParams p{n, k};
      if (!in_central_range(p)) {
        continue;
      }
      const InequalityTally grow = check_ratio_growth(p);
      const InequalityTally decay = check_ratio_decay(p);
      ratio_checks.add_exact("growth violations " + cell(n, k) + " of " + std::to_string(grow.checked),
                       BigRational(to_big(grow.violations)), Relation::eq, BigRational(0), "ratio growth");
      ratio_checks.add_exact("decay violations " + cell(n, k) + " of " + std::to_string(decay.checked),
                       BigRational(to_big(decay.violations)), Relation::eq, BigRational(0), "ratio decay");
      ratio_checks.add("argmax near t1 " + cell(n, k), static_cast<double>(argmax_st(p)), Relation::approx, t1(p),
                 argmax_localized(p), "argmax localization");
      ratio_checks.add("central window " + cell(n, k), 1.0, Relation::eq, 1.0, central_window_dominates(p),
                 "central window");
      const BigRational q = r_exact({n - 1, k}) / r_exact({n - 1, k - 1});
      ratio_checks.add_exact("r(n-1,k)/r(n-1,k-1) > 1/9 " + cell(n, k), q, Relation::gt, BigRational(1, 9),
                       "neighbour ratio");
      ratio_checks.add_exact("r(n-1,k)/r(n-1,k-1) < 9 " + cell(n, k), q, Relation::lt, BigRational(9), "neighbour ratio");
    }
  }
  out.push_back(std::move(ratio_checks));

  BoundReport drift;
  drift.subject = "empirical constants";
  double worst_c = 0.0;
  for (int n : {64, 96, 128}) {
    for (int k = 1; 2 * k <= n; ++k) {
      const SphereParams p{n, k};
      if (!in_central_range(p)) {
        continue;
      }
      const double tt = t1(p);
      const double predicted = n / (n - 2.0 * tt) * std::pow((k - tt) / k, 2);
      const double q = to_double(r_exact({n - 1, k - 1}) / r_exact(p)) / predicted;
      worst_c = std::max(worst_c, std::abs(q - 1.0) * std::sqrt(n) / std::pow(std::log2(n), 1.5));
    }
  }
  drift.add_float("c with r(n-1,k-1)/r(n,k) in predicted (1 +- c log^1.5 n / sqrt n)", worst_c, Relation::le,
                  INFINITY, "neighbour ratio drift", 0.0, Severity::soft);
  const double lower = small_k_lower({400, 5});
  drift.add_float("r(400,5) / small-k estimate", to_double(r_exact({400, 5})) / lower, Relation::ge, 1.0,
                  "small-k estimate", 0.0, Severity::soft);
  out.push_back(std::move(drift));
  return out;
}

// --------------------------------------------------------- asymptotics

std::vector<BoundReport> asymptotics_suite(const SuiteConfig&) {
  std::vector<BoundReport> out;
  out.push_back(psi_concavity_check(1e-3));
  out.push_back(psi_linear_bound_check(1e-3));
  out.push_back(r_identity_check(1e-3));

  BoundReport cross;
  cross.subject = "phi, psi and t1 consistency";
  double phi_err = 0.0;
  double r_err = 0.0;
  std::vector<SphereParams> cells;
  for (int n = 2; n <= 512; n += (n < 64 ? 1 : 17)) {
    for (int k = 0; 2 * k <= n; k += std::max(1, n / 24)) {
      const SphereParams p{n, k};
      const double x = static_cast<double>(k) / n;
      phi_err = std::max(phi_err, std::abs(phi(t1(p) / n, p) - psi_value(x)));
      r_err = std::max(r_err, std::abs(r_of_x(x) - t1(p) / n));
      if (n >= 32 && k >= 4) {
        cells.push_back(p);
      }
    }
  }
  cross.add_float("max |phi(t1/n) - psi(k/n)|", phi_err, Relation::le, 1e-10, "phi meets psi at t1");
  cross.add_float("max |r(k/n) - t1/n|", r_err, Relation::le, 1e-9, "scaled root");
  out.push_back(std::move(cross));
  out.push_back(phi_derivative_report(cells));

  BoundReport combine;
  combine.subject = "combine function";
  double homog = 0.0;
  bool increasing = true;
  for (int i = 1; i <= 20; ++i) {
    const double x = 0.1 * i;
    for (double ratio : {0.2, 0.5, 1.0, 2.0, 5.0}) {
      const double y = ratio * x;
      homog = std::max(homog, rel_err(f_combine(3.5 * x, 3.5 * y), 3.5 * f_combine(x, y)));
      const double h = 1e-6 * x;
      increasing = increasing && f_combine(x + h, y) > f_combine(x, y) && f_combine(x, y + h) > f_combine(x, y);
    }
  }
  combine.add_float("max relative homogeneity defect", homog, Relation::le, 1e-12, "combine homogeneous");
  combine.add("increasing in each argument", 1.0, Relation::eq, 1.0, increasing, "combine monotone");
  combine.add_float("F(1,1)", f_combine(1, 1), Relation::approx, 2.0, "combine values", 1e-15);
  combine.add_float("F(1,9)", f_combine(1, 9), Relation::approx, 9.0, "combine values", 1e-15);
  out.push_back(std::move(combine));

  BoundReport sphere_exp;
  sphere_exp.subject = "energy ratio against 2^(n psi(k/n)), n <= 64";
  double worst_upper = 0.0;
  double worst_surrogate = 0.0;
  for (int n = 1; n <= 64; ++n) {
    for (int k = 0; 2 * k <= n; ++k) {
      const double bound = std::exp2(n * psi_value(static_cast<double>(k) / n));
      const double r = to_double(r_exact({n, k}));
      worst_upper = std::max(worst_upper, r / bound);
      if (k >= 8) {
        worst_surrogate = std::max(worst_surrogate, bound / (8.0 * std::pow(k, 1.5) * r));
      }
    }
  }
  sphere_exp.add_float("max r(n,k) / 2^(n psi)", worst_upper, Relation::le, 1.0 + 1e-9, "psi dominates r");
  sphere_exp.add_float("max 2^(n psi) / (8 k^1.5 r(n,k))", worst_surrogate, Relation::le, 1.0,
                       "psi within k^1.5 of r");
  out.push_back(std::move(sphere_exp));
  return out;
}

// -------------------------------------------------------------- bounds

std::vector<BoundReport> bounds_suite(const SuiteConfig& cfg) {
  Rng rng = suite_rng(cfg.seed, 5);
  const OptimizerConfig& opt = cfg.optimizer;
  std::vector<BoundReport> out;

  const CubeFunction sub = synthesize(embed(SpectrumVector::uniform(subspace(8, 2))));
  out.push_back(uncertainty_report(sub, opt.dense_cap, cfg.exact_limit));
  out.push_back(restricted_mass_check(sub, SupportSet::singleton(8, 0), 0.75, opt.dense_cap));
  for (int trial = 0; trial < 3; ++trial) {
    const SupportSet a = random_support(rng, 10, 3);
    const CubeFunction f = random_function_on(rng, a, opt.dense_cap);
    out.push_back(restricted_mass_check(f, random_support(rng, 10, 8), 0.5, opt.dense_cap));
  }

  for (int trial = 0; trial < 4; ++trial) {
    const int n = 6 + trial;
    std::uniform_int_distribution<int> radius(0, n / 2);
    const int k1 = radius(rng);
    const int k2 = radius(rng);
    const SupportSet b1 = SupportSet::ball(n, k1);
    const SupportSet b2 = SupportSet::ball(n, k2);
    std::uniform_int_distribution<std::size_t> s1(1, b1.size());
    std::uniform_int_distribution<std::size_t> s2(1, b2.size());
    out.push_back(sumset_bound_report(random_subset(rng, b1, s1(rng)), random_subset(rng, b2, s2(rng)), k1, k2));
  }

  for (auto [n, k] : std::array<std::pair<int, int>, 3>{{{6, 0}, {6, 2}, {8, 2}}}) {
    out.push_back(ball_bound_report(n, k, opt));
  }

  out.push_back(tensorization_check(synthesize(embed(SpectrumVector::uniform(SupportSet::sphere(3, 1)))), 2,
                                    opt.dense_cap));
  out.push_back(tensorization_check(random_function(rng, 3), 3, opt.dense_cap));

  out.push_back(additive_bracket_report(subspace(6, 3), opt, cfg.exact_limit));
  out.push_back(additive_bracket_report(SupportSet::sphere(5, 2), opt, cfg.exact_limit));
  out.push_back(additive_bracket_report(random_support(rng, 7, 10), opt, cfg.exact_limit));

  BoundReport scan;
  scan.subject = "sphere scan, n <= 5";
  for (const ConjectureRecord& rec : conjecture_scan(5, opt)) {
    scan.add_float("gap " + cell(rec.n, rec.k), rec.gap, Relation::ge, -1e-8, "estimator above energy ratio");
    scan.add_float("upper gap " + cell(rec.n, rec.k), rec.upper_gap, Relation::ge, rec.gap - 1e-8, "bracket");
  }
  out.push_back(std::move(scan));

  out.push_back(energy_lowerbound_step_check(sub, 1.0, cfg.exact_limit, opt.dense_cap));
  return out;
}

}  // namespace

const char* suite_name(Suite s) {
  switch (s) {
    case Suite::all: return "all";
    case Suite::core: return "core";
    case Suite::additive: return "additive";
    case Suite::sphere: return "sphere";
    case Suite::asymptotics: return "asymptotics";
    case Suite::bounds: return "bounds";
  }
  return "?";
}

std::optional<Suite> parse_suite(std::string_view name) {
  for (Suite s : {Suite::all, Suite::core, Suite::additive, Suite::sphere, Suite::asymptotics, Suite::bounds}) {
    if (name == suite_name(s)) {
      return s;
    }
  }
  return std::nullopt;
}

std::vector<BoundReport> run_suite(Suite suite, const SuiteConfig& cfg) {
  std::vector<BoundReport> out;
  auto take = [&out](std::vector<BoundReport> part) {
    for (auto& r : part) {
      out.push_back(std::move(r));
    }
  };
  const bool all = suite == Suite::all;
  if (all || suite == Suite::core) take(core_suite(cfg));
  if (all || suite == Suite::additive) take(additive_suite(cfg));
  if (all || suite == Suite::sphere) take(sphere_suite(cfg));
  if (all || suite == Suite::asymptotics) take(asymptotics_suite(cfg));
  if (all || suite == Suite::bounds) take(bounds_suite(cfg));
  return out;
}

}  // namespace cubenorm
