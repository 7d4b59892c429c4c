#pragma once

// The quartic form
//
//   F(y) = sum_{x in A+A} ( sum_{(a,b) in M_x} y_a y_b )^2  =  E f^4,
//   f = sum_{a in A} y_a W_a,
//
// whose maximum over the unit sphere is mu(A) = max E f^4 / (E f^2)^2 over
// functions with Fourier support in A. This header also hosts the certified
// lower bound (multi-start ascent), the assembled upper bounds, the A x A
// matrix whose quadratic form reproduces F, and the split of a function along
// its last coordinate.

#include "cubenorm/additive.hpp"
#include "cubenorm/cube.hpp"
#include "cubenorm/exact.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace cubenorm {

/// Precomputed evaluator of F and its gradient on a fixed support. Picks the
/// pair-table route (O(|A|^2) per call) or the transform route
/// (O(n 2^n) per call) by cost.
class QuarticForm {
 public:
  enum class Route { pairs, transform };

  explicit QuarticForm(SupportSet a, int dense_cap = kDefaultDenseCap);
  QuarticForm(SupportSet a, Route route, int dense_cap = kDefaultDenseCap);

  const SupportSet& support() const { return a_; }
  Route route() const { return route_; }

  double value(std::span<const double> y) const;
  /// Writes dF/dy into grad and returns F(y).
  double value_and_gradient(std::span<const double> y, std::span<double> grad) const;

 private:
  double pairs_value(std::span<const double> y, std::vector<double>& sums) const;

  SupportSet a_;
  Route route_;
  int dense_cap_;
  std::shared_ptr<const PairIndex> index_;
};

/// F(y) by the defining pair sum. y need not be normalized.
double big_f(const SpectrumVector& y);
/// E f^4 with f = synthesize(embed(y)).
double big_f_transform(const SpectrumVector& y, int dense_cap = kDefaultDenseCap);
/// dF/dy_a = 4 (f^3)^(a), f = synthesize(embed(y)).
SpectrumVector big_f_grad(const SpectrumVector& y, int dense_cap = kDefaultDenseCap);

struct OptimizerConfig {
  int starts = 32;
  int max_iters = 10000;
  double tol = 1e-12;
  std::uint64_t seed = 0;
  int threads = 1;
  int dense_cap = kDefaultDenseCap;
  /// Window over which relative improvement below tol counts as converged.
  int stall_window = 50;
};

struct MuEstimate {
  double value = 0.0;
  SpectrumVector certificate;
  int starts_used = 0;
  long iterations = 0;
  bool converged = false;
};

/// Certified lower bound on mu(A): F at the best point found by a shifted
/// power-map ascent on the sphere. Starts: the uniform vector, cfg.starts
/// seeded random vectors, any extra starts given, and finally the indicator
/// of every dyadic level set of the best iterate. Deterministic given
/// (seed, starts) for any thread count.
MuEstimate mu_lower(const SupportSet& a, const OptimizerConfig& cfg = {},
                    const std::vector<SpectrumVector>& extra_starts = {});

struct SphereShape {
  int n = 0;
  int k = 0;
};

/// Recognizes A as exactly the Hamming sphere S(n, k) of its dimension.
std::optional<SphereShape> recognize_sphere(const SupportSet& a);

struct BoundSet {
  std::uint64_t cardinality_bound = 0;
  std::uint64_t multiplicity_bound = 0;
  std::optional<double> sphere_psi_bound;  // 2^(n psi(k/n)), k <= n/2
  std::optional<BigInt> sphere_sum_bound;  // sum_t C(2t,t) C(k,t)^2
  std::optional<SphereShape> sphere;
  double best = 0.0;
};

BoundSet mu_upper(const SupportSet& a);

/// Symmetric |A| x |A| matrix, row-major.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(std::size_t size) : size_(size), data_(size * size, 0.0) {}
  std::size_t size() const { return size_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * size_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * size_ + j]; }
  double quadratic_form(std::span<const double> y) const;
  bool is_symmetric() const;

 private:
  std::size_t size_;
  std::vector<double> data_;
};

/// T(a1, a2) = sum_{(b1,b2) in M_{a1+a2}} y_{b1} y_{b2}, so that y^T T y = F(y).
/// The weights are taken at the representing pair (b1, b2); weighting by
/// y(a1) y(a2) instead gives a matrix whose quadratic form is not F.
SymmetricMatrix pair_weight_matrix(const SupportSet& a, const SpectrumVector& y);

struct SplitPair {
  CubeFunction g0;  // dimension n-1
  CubeFunction g1;
  std::optional<double> r0;  // moment ratio of g0, absent when g0 == 0
  std::optional<double> r1;
};

/// f restricted to x_n = 0 is g0 + g1, restricted to x_n = 1 is g0 - g1.
SplitPair decompose_last(const CubeFunction& f);
CubeFunction recombine_last(const CubeFunction& g0, const CubeFunction& g1);

struct SplitMoments {
  double g0_m2 = 0.0;
  double g0_m4 = 0.0;
  double g1_m2 = 0.0;
  double g1_m4 = 0.0;
  double cross = 0.0;  // E g0^2 g1^2
};

SplitMoments split_moments(const CubeFunction& g0, const CubeFunction& g1);

/// G(x) = (E g1^4 x^2 + 6 sqrt(E g0^4 E g1^4) x + E g0^4)
///      / (E^2 g1^2 x^2 + 2 E g0^2 E g1^2 x + E^2 g0^2).
double g_curve(const SplitMoments& m, double x);
double g_curve(const CubeFunction& g0, const CubeFunction& g1, double x);
/// sup_{x >= 0} G(x): R0 if R0 >= 9 R1, R1 if R1 >= 9 R0, else the combine
/// function of (R0, R1).
double g_curve_max(const SplitMoments& m);
double g_curve_max(const CubeFunction& g0, const CubeFunction& g1);
/// Interior maximizer, present only when 1/9 < R0/R1 < 9.
std::optional<double> g_curve_argmax(const SplitMoments& m);

}  // namespace cubenorm
