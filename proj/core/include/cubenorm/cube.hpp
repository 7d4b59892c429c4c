#pragma once

// Points, subsets, functions and spectra on the discrete cube {0,1}^n.
//
// Index convention: a point is an n-bit mask read as an integer; bit i of the
// mask is coordinate i+1. Dense arrays are indexed by that integer.
//
// Transform convention: analysis carries the 2^-n factor, synthesis carries
// none, so that
//   fhat(a) = 2^-n sum_x f(x) (-1)^<a,x>,   f(x) = sum_a fhat(a) (-1)^<a,x>,
// and expectations are over the uniform measure.

#include "cubenorm/errors.hpp"

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cubenorm {

using Mask = std::uint64_t;

inline constexpr int kDefaultDenseCap = 24;
/// Hard ceiling on any dense allocation regardless of configuration.
inline constexpr int kAbsoluteDenseCap = 30;
inline constexpr int kMaxDimension = 63;

inline int weight(Mask m) { return std::popcount(m); }
inline bool inner_parity(Mask a, Mask x) { return (std::popcount(a & x) & 1) != 0; }
inline Mask low_bits(int n) { return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1); }

/// Throws ResourceLimitError unless 0 <= n <= min(cap, kAbsoluteDenseCap).
void require_dense(int n, int cap, const char* stage);

class CubePoint {
 public:
  CubePoint(int n, Mask mask);

  int dimension() const { return n_; }
  Mask mask() const { return mask_; }
  int weight() const { return cubenorm::weight(mask_); }

  friend CubePoint operator+(const CubePoint& a, const CubePoint& b);
  friend bool operator==(const CubePoint&, const CubePoint&) = default;

 private:
  int n_;
  Mask mask_;
};

/// Duplicate-free, strictly increasing collection of masks in dimension n.
class SupportSet {
 public:
  SupportSet() = default;
  /// Sorts; rejects duplicates and masks with bits at or above n.
  SupportSet(int n, std::vector<Mask> elements);

  static SupportSet sphere(int n, int k);
  static SupportSet ball(int n, int k);
  /// Linear span of the generators (a subspace, size 2^rank).
  static SupportSet span(int n, std::span<const Mask> generators);
  static SupportSet singleton(int n, Mask m);

  int dimension() const { return n_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  std::span<const Mask> elements() const { return elements_; }
  Mask operator[](std::size_t i) const { return elements_[i]; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  bool contains(Mask m) const;
  std::optional<std::size_t> index_of(Mask m) const;

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  int n_ = 0;
  std::vector<Mask> elements_;
};

/// Dense length-2^n real array. Shared layout of CubeFunction and Spectrum;
/// the tag keeps the two domains from being mixed up.
template <class Tag>
class CubeArray {
 public:
  CubeArray() = default;
  explicit CubeArray(int n) : n_(n) {
    require_dense(n, kAbsoluteDenseCap, "allocate");
    values_.assign(std::size_t{1} << n, 0.0);
  }
  CubeArray(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {
    require_dense(n, kAbsoluteDenseCap, "allocate");
    if (values_.size() != (std::size_t{1} << n)) {
      throw DomainError("dense array length must be exactly 2^n");
    }
  }

  int dimension() const { return n_; }
  std::size_t size() const { return values_.size(); }
  double operator[](Mask i) const { return values_[i]; }
  double& operator[](Mask i) { return values_[i]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  friend bool operator==(const CubeArray&, const CubeArray&) = default;

 private:
  int n_ = 0;
  std::vector<double> values_;
};

struct FunctionTag {};
struct SpectrumTag {};
using CubeFunction = CubeArray<FunctionTag>;
using Spectrum = CubeArray<SpectrumTag>;

/// Coefficients y_a indexed by the elements of a support set.
struct SpectrumVector {
  SupportSet support;
  std::vector<double> coords;

  SpectrumVector() = default;
  SpectrumVector(SupportSet a, std::vector<double> y);

  static SpectrumVector uniform(const SupportSet& a);
  /// 1_B / sqrt(|B|) embedded in A; B must be a nonempty subset of A.
  static SpectrumVector indicator(const SupportSet& a, const SupportSet& b);

  double norm() const;
  bool is_normalized(double tol = 1e-12) const;
  SpectrumVector normalized() const;
};

/// Unnormalized in-place Walsh-Hadamard butterfly, O(len log len).
template <class T>
void fwht_inplace(std::span<T> data) {
  const std::size_t len = data.size();
  for (std::size_t h = 1; h < len; h *= 2) {
    for (std::size_t i = 0; i < len; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const T a = data[j];
        const T b = data[j + h];
        data[j] = a + b;
        data[j + h] = a - b;
      }
    }
  }
}

Spectrum analyze(const CubeFunction& f, int dense_cap = kDefaultDenseCap);
CubeFunction synthesize(const Spectrum& s, int dense_cap = kDefaultDenseCap);

namespace reference {
/// Direct O(4^n) evaluation of the defining sums; oracle use, n <= 12.
Spectrum analyze_naive(const CubeFunction& f);
CubeFunction synthesize_naive(const Spectrum& s);
}  // namespace reference

struct RawMoments {
  double m2 = 0.0;  // E f^2
  double m4 = 0.0;  // E f^4
};

struct Moments {
  double m2 = 0.0;
  double m4 = 0.0;
  double ratio = 0.0;  // m4 / m2^2
};

RawMoments raw_moments(const CubeFunction& f);
/// Throws UndefinedRatioError for the zero function.
Moments moments(const CubeFunction& f);

/// Indices with |value| > tol, increasing.
SupportSet support_of(const CubeFunction& f, double tol);
SupportSet support_of(const Spectrum& s, double tol);

CubeFunction character(int n, Mask alpha);

Spectrum embed(const SpectrumVector& y, int dense_cap = kDefaultDenseCap);
SpectrumVector restrict_to(const Spectrum& s, const SupportSet& a);

}  // namespace cubenorm
