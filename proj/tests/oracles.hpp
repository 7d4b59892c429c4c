#pragma once

// Slow, obviously-correct reference computations used only by tests. None of
// these call into the transform or pair-index code they are checking.

#include "cubenorm/cube.hpp"
#include "cubenorm/exact.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace oracle {

using cubenorm::Mask;
using cubenorm::SupportSet;

inline int sign_of(Mask a, Mask x) { return (std::popcount(a & x) & 1) ? -1 : 1; }

/// Quadruples (a,b,c,d) in A^4 with a^b^c^d = 0, by exhaustive loop.
inline std::uint64_t quadruple_count(const SupportSet& a) {
  std::uint64_t count = 0;
  for (Mask p : a)
    for (Mask q : a)
      for (Mask r : a)
        for (Mask s : a)
          count += ((p ^ q ^ r ^ s) == 0) ? 1 : 0;
  return count;
}

inline std::map<Mask, std::uint64_t> pair_counts(const SupportSet& a) {
  std::map<Mask, std::uint64_t> out;
  for (Mask p : a)
    for (Mask q : a) ++out[p ^ q];
  return out;
}

/// f(x) = sum_a y_a (-1)^<a,x> evaluated point by point.
inline std::vector<double> synthesize_direct(const SupportSet& a, const std::vector<double>& y) {
  const int n = a.dimension();
  std::vector<double> f(std::size_t{1} << n, 0.0);
  for (Mask x = 0; x < f.size(); ++x)
    for (std::size_t i = 0; i < a.size(); ++i) f[x] += y[i] * sign_of(a[i], x);
  return f;
}

inline double mean_power(const std::vector<double>& f, int p) {
  double s = 0.0;
  for (double v : f) s += std::pow(v, p);
  return s / static_cast<double>(f.size());
}

inline double fourth_moment(const SupportSet& a, const std::vector<double>& y) {
  return mean_power(synthesize_direct(a, y), 4);
}

/// Central differences of a scalar function of a vector.
inline std::vector<double> numeric_gradient(const std::function<double(const std::vector<double>&)>& fn,
                                            std::vector<double> y, double h) {
  std::vector<double> g(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double keep = y[i];
    y[i] = keep + h;
    const double up = fn(y);
    y[i] = keep - h;
    const double down = fn(y);
    y[i] = keep;
    g[i] = (up - down) / (2 * h);
  }
  return g;
}

/// max over nonempty B subset of A of E(B)/|B|^2, every subset visited.
inline cubenorm::BigRational hereditary_bruteforce(const SupportSet& a) {
  cubenorm::BigRational best = 0;
  const std::size_t m = a.size();
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << m); ++bits) {
    std::vector<Mask> el;
    for (std::size_t i = 0; i < m; ++i)
      if ((bits >> i) & 1U) el.push_back(a[i]);
    const SupportSet b(a.dimension(), el);
    cubenorm::BigRational r(cubenorm::to_big(quadruple_count(b)), cubenorm::to_big(b.size() * b.size()));
    r.canonicalize();
    if (r > best) best = r;
  }
  return best;
}

/// Pascal's rule in exact arithmetic, independent of the library binomial.
inline cubenorm::BigInt pascal(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::vector<cubenorm::BigInt> row{1};
  for (unsigned i = 1; i <= n; ++i) {
    std::vector<cubenorm::BigInt> next(i + 1);
    next[0] = next[i] = 1;
    for (unsigned j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return row[k];
}

inline std::vector<Mask> weight_class(int n, int k) {
  std::vector<Mask> out;
  for (Mask x = 0; x < (Mask{1} << n); ++x)
    if (std::popcount(x) == k) out.push_back(x);
  return out;
}

}  // namespace oracle
