#pragma once

// Exact rational evaluation of the Hamming-sphere quantities
//
//   s_t(n,k) = C(n,2t) (C(2t,t) C(n-2t,k-t))^2 / C(n,k)^2,
//   r(n,k)   = sum_{t=0..k} s_t(n,k) = E(S(n,k)) / |S(n,k)|^2,
//
// the location t1(n,k) of the dominant summand (smaller root of
// 4t^2 - 3nt + 2k(n-k)), and the partition bound sum_t C(2t,t) C(k,t)^2.
// None of these touch dense arrays, so n may be far beyond the dense cap.

#include "cubenorm/exact.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cubenorm {

struct SphereParams {
  int n = 0;
  int k = 0;

  /// Throws DomainError unless n >= 1 and 0 <= k <= n.
  void validate() const;
  /// Additionally requires k <= n/2.
  void validate_lower_half() const;
};

BigRational s_t_exact(SphereParams p, int t);
BigRational r_exact(SphereParams p);
/// Closed form of s_{t+1}/s_t: 2(2t+1)/(t+1)^3 * (k-t)^2 (n-k-t)^2 / ((n-2t)(n-2t-1)).
BigRational ratio_st(SphereParams p, int t);

double t1(SphereParams p);
double t2(SphereParams p);
/// Exact sign of t1(n,k) - v for a rational v (t1 is a quadratic surd).
int compare_t1(SphereParams p, const BigRational& v);

/// The t maximizing s_t; smallest such t on exact ties.
int argmax_st(SphereParams p);

BigInt sphere_sum_bound(int k);

/// exp(-2k^2/n) * sum_t C(2t,t) C(k,t)^2, a float diagnostic.
double small_k_lower(SphereParams p);

struct SphereTableRow {
  int t = 0;
  BigRational s_t;
  std::optional<BigRational> ratio_to_prev;
  BigRational cumulative;
};

/// Rows t_begin..t_end inclusive (clamped to [0, k]); cumulative always sums
/// from t = 0.
std::vector<SphereTableRow> sphere_table(SphereParams p, int t_begin = 0, int t_end = -1);

/// Outcome of scanning an inequality family over its admissible instances.
struct InequalityTally {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::string first_violation;

  bool holds() const { return violations == 0; }
};

/// For integer Delta with 3 <= Delta < t1 and 1 <= t <= t1 - Delta:
/// s_{t+1}/s_t >= 1 + Delta/t, exact.
InequalityTally check_ratio_growth(SphereParams p);
/// For integer Delta with Delta >= log2(n) and Delta < k - t1, and
/// t1 + Delta <= t <= k-1: s_{t+1}/s_t <= 1 - Delta/t, exact.
InequalityTally check_ratio_decay(SphereParams p);
/// |argmax - t1| <= sqrt(n log2 n).
bool argmax_localized(SphereParams p);
/// sum_{|t - t1| <= L} s_t >= r / (1 + 1/n) with L = ceil(sqrt(n log2 n)).
bool central_window_dominates(SphereParams p);
/// True when n/log2(n) <= k <= n/2 - n/log2(n).
bool in_central_range(SphereParams p);

}  // namespace cubenorm
