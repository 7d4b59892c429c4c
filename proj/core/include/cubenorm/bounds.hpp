#pragma once

// Inequality reports that instantiate the support, energy and sphere bounds on
// concrete inputs. Every report separates hard checks (a failure is a defect)
// from soft ones (constants the theory leaves unspecified).

#include "cubenorm/additive.hpp"
#include "cubenorm/cube.hpp"
#include "cubenorm/quartic.hpp"
#include "cubenorm/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cubenorm {

/// Entries with |value| <= kSupportTolerance * max|value| count as zero when
/// reading off a support from floating-point data.
inline constexpr double kSupportTolerance = 1e-9;

SupportSet numeric_support(const CubeFunction& f);
SupportSet numeric_support(const Spectrum& s);

/// |supp f| |supp fhat| >= 2^n, |supp f| >= 2^n / mu_upper(A), |supp f| >= 2^n / m(A),
/// plus the hereditary-energy variant (soft, its constant is unspecified).
BoundReport uncertainty_report(const CubeFunction& f, int dense_cap = kDefaultDenseCap, int exact_limit = 20);

/// 2^-n sum_{b in B} f(b)^2 <= 2^(-delta n / 2) E f^2 whenever
/// mu_upper(supp fhat) |B| <= 2^((1-delta) n). Not applicable otherwise.
BoundReport restricted_mass_check(const CubeFunction& f, const SupportSet& b, double delta,
                                  int dense_cap = kDefaultDenseCap);

/// For B in the ball of radius k1 and C in the ball of radius k2:
/// |B+C| >= |B|^2 |C|^2 / sqrt(E(B) E(C)) (exact) and
/// |B+C| >= |B| |C| 2^(-(n/2)(psi(k1/n) + psi(k2/n))).
BoundReport sumset_bound_report(const SupportSet& b, const SupportSet& c, int k1, int k2);

/// mu_lower(B(n,k)) <= 2^(n psi(k/n)) <= min(9^k, 2^n), and r(n,i) <= r(n,k) for i <= k.
BoundReport ball_bound_report(int n, int k, const OptimizerConfig& cfg = {});

/// F(x_1, ..., x_m) = prod f(x_i) on {0,1}^(nm); block i occupies bits [i n, (i+1) n).
CubeFunction tensor_power(const CubeFunction& f, int m, int dense_cap = kDefaultDenseCap);
/// E F^p = (E f^p)^m for p in {2, 4}; sphere support is carried to S(nm, km).
BoundReport tensorization_check(const CubeFunction& f, int m, int dense_cap = kDefaultDenseCap);

/// The additive bracket max_B E(B)/|B|^2 <= mu(A) <= min(|A|, m(A)) evaluated
/// with the estimator; |A| <= 64.
BoundReport additive_bracket_report(const SupportSet& a, const OptimizerConfig& cfg = {}, int exact_limit = 20);

struct ConjectureRecord {
  int n = 0;
  int k = 0;
  double mu_est = 0.0;
  BigRational energy_ratio;
  double gap = 0.0;        // mu_est - energy_ratio
  double upper_gap = 0.0;  // mu_upper.best - energy_ratio
  std::string flag;        // conjecture-consistent | counterexample-candidate | inconclusive
  std::optional<SpectrumVector> certificate;  // kept for counterexample candidates
};

inline constexpr double kConsistentGap = 1e-6;
inline constexpr double kCandidateGap = 1e-4;

/// mu(S(n,k)) against E(S(n,k))/|S(n,k)|^2 for 2 <= n <= n_max, 1 <= k <= n/2,
/// ordered by (n, k).
std::vector<ConjectureRecord> conjecture_scan(int n_max, const OptimizerConfig& cfg = {});

/// Given |supp f| |supp fhat| <= c_val 2^n: E(A) >= E(B) for the hereditary
/// maximizer B of A = supp fhat, with the implied energy scaling reported.
BoundReport energy_lowerbound_step_check(const CubeFunction& f, double c_val, int exact_limit = 20,
                                         int dense_cap = kDefaultDenseCap);

}  // namespace cubenorm
