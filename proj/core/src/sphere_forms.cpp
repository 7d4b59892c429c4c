#include "cubenorm/sphere_forms.hpp"

#include "cubenorm/errors.hpp"

#include <cmath>
#include <sstream>

namespace cubenorm {

namespace {

BigInt sq(const BigInt& v) { return v * v; }

// Integer numerator of s_t: C(n,2t) (C(2t,t) C(n-2t,k-t))^2.
BigInt s_t_numerator(int n, int k, int t) {
  if (2 * t > n || k - t > n - 2 * t) {
    return 0;
  }
  const auto un = static_cast<unsigned long>(n);
  const auto ut = static_cast<unsigned long>(t);
  return binomial(un, 2 * ut) * sq(binomial(2 * ut, ut) * binomial(un - 2 * ut, static_cast<unsigned long>(k - t)));
}

BigInt s_t_denominator(int n, int k) {
  return sq(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k)));
}

void require_t(int t, int hi, const char* op) {
  if (t < 0 || t > hi) {
    throw DomainError(std::string(op) + ": t=" + std::to_string(t) + " outside [0, " + std::to_string(hi) + "]");
  }
}

std::string params_string(SphereParams p) {
  return "(n=" + std::to_string(p.n) + ", k=" + std::to_string(p.k) + ")";
}

}  // namespace

void SphereParams::validate() const {
  if (n < 1 || k < 0 || k > n) {
    throw DomainError("sphere parameters require n >= 1 and 0 <= k <= n, got " + params_string(*this));
  }
}

void SphereParams::validate_lower_half() const {
  validate();
  if (2 * k > n) {
    throw DomainError("operation requires k <= n/2, got " + params_string(*this));
  }
}

BigRational s_t_exact(SphereParams p, int t) {
  p.validate();
  require_t(t, p.k, "s_t_exact");
  return make_rational(s_t_numerator(p.n, p.k, t), s_t_denominator(p.n, p.k));
}

BigRational r_exact(SphereParams p) {
  p.validate();
  BigInt num = 0;
  for (int t = 0; t <= p.k; ++t) {
    num += s_t_numerator(p.n, p.k, t);
  }
  return make_rational(num, s_t_denominator(p.n, p.k));
}

BigRational ratio_st(SphereParams p, int t) {
  p.validate();
  require_t(t, p.k - 1, "ratio_st");
  const BigInt here = s_t_numerator(p.n, p.k, t);
  if (here == 0) {
    throw DomainError("ratio_st: s_t vanishes at t=" + std::to_string(t) + " for " + params_string(p));
  }
  const long n = p.n;
  const long k = p.k;
  const long tt = t;
  const BigInt den_tail = BigInt(n - 2 * tt) * BigInt(n - 2 * tt - 1);
  if (den_tail <= 0) {
    // Only reachable past the lower half, where s_{t+1} = 0.
    return make_rational(s_t_numerator(p.n, p.k, t + 1), here);
  }
  const BigInt num = 2 * (2 * tt + 1) * sq(BigInt(k - tt)) * sq(BigInt(n - k - tt));
  const BigInt den = BigInt(tt + 1) * BigInt(tt + 1) * BigInt(tt + 1) * den_tail;
  return make_rational(num, den);
}

double t1(SphereParams p) {
  p.validate();
  const double n = p.n;
  const double d = n - 2.0 * p.k;
  return (3.0 * n - std::sqrt(n * n + 8.0 * d * d)) / 8.0;
}

double t2(SphereParams p) {
  p.validate();
  const double n = p.n;
  const double d = n - 2.0 * p.k;
  return (3.0 * n + std::sqrt(n * n + 8.0 * d * d)) / 8.0;
}

int compare_t1(SphereParams p, const BigRational& v) {
  p.validate();
  // t1 - v = (c - sqrt(D)) / 8 with c = 3n - 8v, D = n^2 + 8(n-2k)^2.
  const BigRational c = BigRational(3 * p.n) - 8 * v;
  if (sgn(c) < 0) {
    return -1;
  }
  const BigInt d = BigInt(p.n - 2 * p.k);
  const BigRational disc = BigRational(BigInt(p.n) * p.n + 8 * d * d);
  const int s = cmp(c * c, disc);
  return s > 0 ? 1 : (s < 0 ? -1 : 0);
}

int argmax_st(SphereParams p) {
  p.validate();
  int best = 0;
  BigInt best_num = s_t_numerator(p.n, p.k, 0);
  for (int t = 1; t <= p.k; ++t) {
    BigInt num = s_t_numerator(p.n, p.k, t);
    if (num > best_num) {
      best = t;
      best_num = std::move(num);
    }
  }
  return best;
}

BigInt sphere_sum_bound(int k) {
  if (k < 0) {
    throw DomainError("sphere_sum_bound: k must be nonnegative");
  }
  const auto uk = static_cast<unsigned long>(k);
  BigInt total = 0;
  for (unsigned long t = 0; t <= uk; ++t) {
    total += binomial(2 * t, t) * sq(binomial(uk, t));
  }
  return total;
}

double small_k_lower(SphereParams p) {
  p.validate();
  const double k = p.k;
  return std::exp(-2.0 * k * k / p.n) * to_double(BigRational(sphere_sum_bound(p.k)));
}

std::vector<SphereTableRow> sphere_table(SphereParams p, int t_begin, int t_end) {
  p.validate();
  const int hi = t_end < 0 ? p.k : std::min(t_end, p.k);
  const int lo = std::max(t_begin, 0);
  const BigInt den = s_t_denominator(p.n, p.k);
  std::vector<SphereTableRow> rows;
  BigInt running = 0;
  BigInt prev = 0;
  for (int t = 0; t <= hi; ++t) {
    const BigInt num = s_t_numerator(p.n, p.k, t);
    running += num;
    if (t >= lo) {
      SphereTableRow row;
      row.t = t;
      row.s_t = make_rational(num, den);
      if (t > 0 && prev != 0) {
        row.ratio_to_prev = make_rational(num, prev);
      }
      row.cumulative = make_rational(running, den);
      rows.push_back(std::move(row));
    }
    prev = num;
  }
  return rows;
}

namespace {

void record(InequalityTally& tally, bool ok, SphereParams p, int delta, int t, const BigRational& ratio) {
  ++tally.checked;
  if (!ok) {
    if (tally.violations == 0) {
      std::ostringstream out;
      out << params_string(p) << " delta=" << delta << " t=" << t << " ratio=" << rational_string(ratio);
      tally.first_violation = out.str();
    }
    ++tally.violations;
  }
}

std::vector<BigRational> all_ratios(SphereParams p) {
  std::vector<BigRational> out;
  out.reserve(static_cast<std::size_t>(p.k));
  for (int t = 0; t < p.k; ++t) {
    out.push_back(ratio_st(p, t));
  }
  return out;
}

}  // namespace

InequalityTally check_ratio_growth(SphereParams p) {
  p.validate_lower_half();
  InequalityTally tally;
  if (p.k < 1) {
    return tally;
  }
  const std::vector<BigRational> ratios = all_ratios(p);
  for (int delta = 3; compare_t1(p, BigRational(delta)) > 0; ++delta) {
    for (int t = 1; t < p.k && compare_t1(p, BigRational(t + delta)) >= 0; ++t) {
      const BigRational rhs = 1 + make_rational(delta, t);
      record(tally, ratios[static_cast<std::size_t>(t)] >= rhs, p, delta, t, ratios[static_cast<std::size_t>(t)]);
    }
  }
  return tally;
}

InequalityTally check_ratio_decay(SphereParams p) {
  p.validate_lower_half();
  InequalityTally tally;
  if (p.k < 1) {
    return tally;
  }
  const std::vector<BigRational> ratios = all_ratios(p);
  const int delta0 = static_cast<int>(std::ceil(std::log2(static_cast<double>(p.n))));
  // Delta < k - t1  <=>  t1 < k - Delta.
  for (int delta = std::max(delta0, 1); compare_t1(p, BigRational(p.k - delta)) < 0; ++delta) {
    for (int t = p.k - 1; t >= 1 && compare_t1(p, BigRational(t - delta)) <= 0; --t) {
      const BigRational rhs = 1 - make_rational(delta, t);
      record(tally, ratios[static_cast<std::size_t>(t)] <= rhs, p, delta, t, ratios[static_cast<std::size_t>(t)]);
    }
  }
  return tally;
}

bool argmax_localized(SphereParams p) {
  p.validate_lower_half();
  const double n = p.n;
  return std::abs(argmax_st(p) - t1(p)) <= std::sqrt(n * std::log2(n));
}

bool central_window_dominates(SphereParams p) {
  p.validate_lower_half();
  const double n = p.n;
  const int window = static_cast<int>(std::ceil(std::sqrt(n * std::log2(n))));
  BigInt inside = 0;
  BigInt total = 0;
  for (int t = 0; t <= p.k; ++t) {
    const BigInt num = s_t_numerator(p.n, p.k, t);
    total += num;
    // |t - t1| <= L  <=>  t - L <= t1 <= t + L.
    if (compare_t1(p, BigRational(t - window)) >= 0 && compare_t1(p, BigRational(t + window)) <= 0) {
      inside += num;
    }
  }
  return inside * (p.n + 1) >= total * p.n;
}

bool in_central_range(SphereParams p) {
  p.validate();
  if (p.n < 2) {
    return false;
  }
  const double n = p.n;
  const double edge = n / std::log2(n);
  return p.k >= edge && p.k <= n / 2.0 - edge;
}

}  // namespace cubenorm
