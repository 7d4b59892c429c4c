#include "cubenorm/bounds.hpp"

#include "cubenorm/sphere_asymptotics.hpp"
#include "cubenorm/sphere_forms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cubenorm {

namespace {

constexpr double kFloatSlack = 1e-9;
constexpr double kEstimatorSlack = 1e-8;

template <class Array>
double max_abs(const Array& a) {
  double m = 0.0;
  for (double v : a.values()) {
    m = std::max(m, std::abs(v));
  }
  return m;
}

BigRational pow2(int n) {
  BigInt v = 1;
  v <<= static_cast<mp_bitcnt_t>(n);
  return BigRational(v);
}

BigRational from_count(std::uint64_t v) { return BigRational(to_big(v)); }

double log2_size(std::size_t s) { return std::max(1.0, std::log2(static_cast<double>(s))); }

std::string set_subject(const SupportSet& a) {
  return "A (n=" + std::to_string(a.dimension()) + ", |A|=" + std::to_string(a.size()) + ")";
}

void require_nonzero(const CubeFunction& f, const char* op) {
  if (max_abs(f) == 0.0) {
    throw DomainError(std::string(op) + ": zero function");
  }
}

int max_weight(const SupportSet& s) {
  int w = 0;
  for (Mask m : s) {
    w = std::max(w, weight(m));
  }
  return w;
}

// The hereditary search needs a pair index; beyond that size it is skipped.
bool hereditary_feasible(const SupportSet& a) { return a.size() <= PairIndex::kMaxSupport; }

}  // namespace

SupportSet numeric_support(const CubeFunction& f) { return support_of(f, kSupportTolerance * max_abs(f)); }
SupportSet numeric_support(const Spectrum& s) { return support_of(s, kSupportTolerance * max_abs(s)); }

BoundReport uncertainty_report(const CubeFunction& f, int dense_cap, int exact_limit) {
  require_nonzero(f, "uncertainty_report");
  const int n = f.dimension();
  const Spectrum fhat = analyze(f, dense_cap);
  const SupportSet a = numeric_support(fhat);
  const SupportSet s = numeric_support(f);
  BoundReport rep;
  rep.subject = "f (n=" + std::to_string(n) + ", |supp f|=" + std::to_string(s.size()) +
                ", |supp fhat|=" + std::to_string(a.size()) + ")";

  const BigRational cube = pow2(n);
  rep.add_exact("|supp f| * |supp fhat| >= 2^n", from_count(s.size()) * from_count(a.size()), Relation::ge, cube,
                "support uncertainty");

  const BoundSet upper = mu_upper(a);
  rep.add_float("|supp f| * mu_upper(A) >= 2^n", static_cast<double>(s.size()) * upper.best, Relation::ge,
                std::ldexp(1.0, n), "support vs mu", kFloatSlack);

  const std::uint64_t m = upper.multiplicity_bound;
  rep.add_exact("|supp f| * m(A) >= 2^n", from_count(s.size()) * from_count(m), Relation::ge, cube,
                "support vs multiplicity");

  if (hereditary_feasible(a)) {
    const HereditaryResult h = hereditary_energy(a, exact_limit);
    const double rhs = std::ldexp(1.0, n) / (to_double(h.ratio) * std::pow(log2_size(a.size()), 3));
    rep.add_float("|supp f| vs 2^n / (hereditary ratio * log2^3|A|), constant 1", static_cast<double>(s.size()),
                  Relation::ge, rhs, "support vs hereditary energy", 0.0, Severity::soft);
  }
  return rep;
}

BoundReport restricted_mass_check(const CubeFunction& f, const SupportSet& b, double delta, int dense_cap) {
  require_nonzero(f, "restricted_mass_check");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("restricted_mass_check: delta must lie in (0, 1)");
  }
  const int n = f.dimension();
  if (b.dimension() != n) {
    throw DomainError("restricted_mass_check: B has the wrong dimension");
  }
  const SupportSet a = numeric_support(analyze(f, dense_cap));
  const BoundSet upper = mu_upper(a);
  BoundReport rep;
  rep.subject = "f (n=" + std::to_string(n) + ", |supp fhat|=" + std::to_string(a.size()) +
                "), |B|=" + std::to_string(b.size()) + ", delta=" + std::to_string(delta);

  const double budget = std::exp2((1.0 - delta) * n);
  const double load = upper.best * static_cast<double>(b.size());
  rep.add_float("mu_upper(A) * |B| <= 2^((1-delta) n)", load, Relation::le, budget, "restricted mass precondition");
  if (load > budget) {
    rep.applicable = false;
    rep.note = "precondition fails; bound not claimed";
    return rep;
  }
  double mass = 0.0;
  for (Mask x : b) {
    mass += f[x] * f[x];
  }
  mass = std::ldexp(mass, -n);
  const double energy = raw_moments(f).m2;
  rep.add_float("2^-n sum_B f^2 <= 2^(-delta n/2) E f^2", mass, Relation::le, std::exp2(-delta * n / 2.0) * energy,
                "restricted mass", kFloatSlack);
  return rep;
}

BoundReport sumset_bound_report(const SupportSet& b, const SupportSet& c, int k1, int k2) {
  if (b.empty() || c.empty()) {
    throw DomainError("sumset_bound_report: sets must be nonempty");
  }
  const int n = b.dimension();
  if (c.dimension() != n) {
    throw DomainError("sumset_bound_report: dimension mismatch");
  }
  if (k1 < 0 || k2 < 0 || 2 * k1 > n || 2 * k2 > n) {
    throw DomainError("sumset_bound_report: radii must lie in [0, n/2]");
  }
  if (max_weight(b) > k1 || max_weight(c) > k2) {
    throw DomainError("sumset_bound_report: B or C leaves its ball");
  }
  BoundReport rep;
  rep.subject = "B (|B|=" + std::to_string(b.size()) + ", k1=" + std::to_string(k1) + "), C (|C|=" +
                std::to_string(c.size()) + ", k2=" + std::to_string(k2) + "), n=" + std::to_string(n);

  const std::size_t sum_size = sumset(b, c).size();
  const BigRational bs = from_count(b.size());
  const BigRational cs = from_count(c.size());
  const BigRational eb(additive_energy(b));
  const BigRational ec(additive_energy(c));
  // |B+C| >= |B|^2 |C|^2 / sqrt(E(B) E(C)), squared.
  const BigRational lhs = from_count(sum_size) * from_count(sum_size) * eb * ec;
  const BigRational rhs = bs * bs * bs * bs * cs * cs * cs * cs;
  rep.add_exact("|B+C|^2 E(B) E(C) >= |B|^4 |C|^4", lhs, Relation::ge, rhs, "sumset vs energy");

  const double x1 = static_cast<double>(k1) / n;
  const double x2 = static_cast<double>(k2) / n;
  const double denom = std::exp2(n / 2.0 * (psi_value(x1) + psi_value(x2)));
  rep.add_float("|B+C| >= |B||C| / 2^((n/2)(psi(k1/n) + psi(k2/n)))", static_cast<double>(sum_size), Relation::ge,
                static_cast<double>(b.size()) * static_cast<double>(c.size()) / denom, "sumset vs psi", kFloatSlack);
  return rep;
}

BoundReport ball_bound_report(int n, int k, const OptimizerConfig& cfg) {
  if (n < 1 || k < 0 || 2 * k > n) {
    throw DomainError("ball_bound_report: requires 0 <= k <= n/2");
  }
  BoundReport rep;
  rep.subject = "B(" + std::to_string(n) + ", " + std::to_string(k) + ")";
  const double psi_bound = std::exp2(n * psi_value(static_cast<double>(k) / n));

  const MuEstimate est = mu_lower(SupportSet::ball(n, k), cfg);
  rep.add_float("mu_lower(B(n,k)) <= 2^(n psi(k/n))", est.value, Relation::le, psi_bound, "ball psi bound",
                kFloatSlack);

  const double classic = std::min(std::pow(9.0, k), std::ldexp(1.0, n));
  if (k == 0 || 2 * k == n) {
    rep.add_float("2^(n psi(k/n)) = min(9^k, 2^n) at an endpoint", psi_bound, Relation::approx, classic,
                  "psi vs classical bound", 1e-12);
  } else {
    rep.add_float("2^(n psi(k/n)) < min(9^k, 2^n)", psi_bound, Relation::lt, classic, "psi vs classical bound");
  }

  if (k >= 1) {
    const BigRational top = r_exact({n, k});
    for (int i = 0; i < k; ++i) {
      rep.add_exact("r(n," + std::to_string(i) + ") <= r(n," + std::to_string(k) + ")", r_exact({n, i}),
                    Relation::le, top, "r monotone in k");
    }
  }
  return rep;
}

CubeFunction tensor_power(const CubeFunction& f, int m, int dense_cap) {
  if (m < 1) {
    throw DomainError("tensor_power: m must be positive");
  }
  const int n = f.dimension();
  require_dense(n * m, dense_cap, "tensor_power");
  CubeFunction out(n * m);
  const Mask block = low_bits(n);
  for (Mask x = 0; x < out.size(); ++x) {
    double v = 1.0;
    for (int i = 0; i < m; ++i) {
      v *= f[(x >> (i * n)) & block];
    }
    out[x] = v;
  }
  return out;
}

BoundReport tensorization_check(const CubeFunction& f, int m, int dense_cap) {
  if (m != 2 && m != 3) {
    throw DomainError("tensorization_check: m must be 2 or 3");
  }
  const int n = f.dimension();
  const CubeFunction big = tensor_power(f, m, dense_cap);
  const RawMoments small_m = raw_moments(f);
  const RawMoments big_m = raw_moments(big);
  BoundReport rep;
  rep.subject = "f (n=" + std::to_string(n) + "), m=" + std::to_string(m);
  rep.add_float("E F_m^2 = (E f^2)^m", big_m.m2, Relation::approx, std::pow(small_m.m2, m), "tensor moments",
                kFloatSlack);
  rep.add_float("E F_m^4 = (E f^4)^m", big_m.m4, Relation::approx, std::pow(small_m.m4, m), "tensor moments",
                kFloatSlack);

  if (max_abs(f) > 0.0) {
    const SupportSet a = numeric_support(analyze(f, dense_cap));
    const int k = weight(a[0]);
    const bool on_sphere = std::all_of(a.begin(), a.end(), [k](Mask x) { return weight(x) == k; });
    if (on_sphere) {
      const SupportSet big_a = numeric_support(analyze(big, dense_cap));
      std::uint64_t off = 0;
      for (Mask x : big_a) {
        off += weight(x) != k * m ? 1 : 0;
      }
      rep.add_exact("points of supp(F_m hat) off S(nm, km)", from_count(off), Relation::eq, BigRational(0),
                    "tensor sphere support");
    }
  }
  return rep;
}

BoundReport additive_bracket_report(const SupportSet& a, const OptimizerConfig& cfg, int exact_limit) {
  if (a.empty() || a.size() > 64) {
    throw DomainError("additive_bracket_report: requires 1 <= |A| <= 64");
  }
  BoundReport rep;
  rep.subject = set_subject(a);
  const HereditaryResult h = hereditary_energy(a, exact_limit);
  const MuEstimate est = mu_lower(a, cfg, {SpectrumVector::indicator(a, h.best)});
  const BoundSet upper = mu_upper(a);
  const BigRational ratio = energy_ratio(a);
  const auto size = static_cast<double>(a.size());

  rep.add_float("E(A)/|A|^2 <= mu_lower", to_double(ratio), Relation::le, est.value + kEstimatorSlack,
                "energy ratio below mu");
  rep.add_float("hereditary ratio <= mu_lower", to_double(h.ratio), Relation::le, est.value + kEstimatorSlack,
                "hereditary energy below mu");
  rep.add_float("mu_lower <= |A|", est.value, Relation::le, size + kEstimatorSlack, "mu at most |A|");
  rep.add_float("mu_lower <= m(A)", est.value, Relation::le,
                static_cast<double>(upper.multiplicity_bound) + kEstimatorSlack, "mu at most m(A)");
  rep.add_float("mu_lower <= mu_upper", est.value, Relation::le, upper.best + kEstimatorSlack, "bracket");
  rep.add_float("mu_upper / hereditary ratio vs log2^3|A|", upper.best / to_double(h.ratio), Relation::le,
                std::pow(log2_size(a.size()), 3), "hereditary upper scaling", 0.0, Severity::soft);
  if (!h.exact) {
    rep.note = "hereditary ratio from heuristic candidates";
  }
  return rep;
}

std::vector<ConjectureRecord> conjecture_scan(int n_max, const OptimizerConfig& cfg) {
  require_dense(n_max, cfg.dense_cap, "conjecture_scan");
  std::vector<ConjectureRecord> out;
  for (int n = 2; n <= n_max; ++n) {
    for (int k = 1; 2 * k <= n; ++k) {
      const SupportSet a = SupportSet::sphere(n, k);
      const MuEstimate est = mu_lower(a, cfg);
      ConjectureRecord rec;
      rec.n = n;
      rec.k = k;
      rec.mu_est = est.value;
      rec.energy_ratio = energy_ratio(a);
      const double ratio = to_double(rec.energy_ratio);
      rec.gap = est.value - ratio;
      rec.upper_gap = mu_upper(a).best - ratio;
      if (rec.gap <= kConsistentGap) {
        rec.flag = "conjecture-consistent";
      } else if (rec.gap > kCandidateGap) {
        rec.flag = "counterexample-candidate";
        rec.certificate = est.certificate;
      } else {
        rec.flag = "inconclusive";
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

BoundReport energy_lowerbound_step_check(const CubeFunction& f, double c_val, int exact_limit, int dense_cap) {
  require_nonzero(f, "energy_lowerbound_step_check");
  const int n = f.dimension();
  const SupportSet a = numeric_support(analyze(f, dense_cap));
  const SupportSet s = numeric_support(f);
  BoundReport rep;
  rep.subject = "f (n=" + std::to_string(n) + ", |supp f|=" + std::to_string(s.size()) +
                ", |supp fhat|=" + std::to_string(a.size()) + "), C=" + std::to_string(c_val);
  const double product = static_cast<double>(s.size()) * static_cast<double>(a.size());
  const double budget = c_val * std::ldexp(1.0, n);
  rep.add_float("|supp f| |supp fhat| <= C 2^n", product, Relation::le, budget, "near-equality precondition");
  if (product > budget || !hereditary_feasible(a)) {
    rep.applicable = false;
    rep.note = product > budget ? "precondition fails; chain not claimed" : "support too large for hereditary search";
    return rep;
  }
  const HereditaryResult h = hereditary_energy(a, exact_limit);
  const BigInt ea = additive_energy(a);
  const BigInt eb = additive_energy(h.best);
  rep.add_exact("E(A) >= E(B), B hereditary maximizer", BigRational(ea), Relation::ge, BigRational(eb),
                "energy chain");
  const double size = static_cast<double>(a.size());
  rep.add_float("E(A)/|A|^3 vs 1/(C^3 log2^9|A|), constant 1", to_double(BigRational(ea)) / (size * size * size),
                Relation::ge, 1.0 / (c_val * c_val * c_val * std::pow(log2_size(a.size()), 9)), "energy chain scaling",
                0.0, Severity::soft);
  rep.note = "structural conclusion (large subset with small span) not evaluated";
  return rep;
}

}  // namespace cubenorm
