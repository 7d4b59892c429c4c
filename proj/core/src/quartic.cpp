#include "cubenorm/quartic.hpp"

#include "cubenorm/sphere_asymptotics.hpp"
#include "cubenorm/sphere_forms.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace cubenorm {

namespace {

void require_nonempty(const SupportSet& a, const char* op) {
  if (a.empty()) {
    throw DomainError(std::string(op) + ": empty support");
  }
}

QuarticForm::Route choose_route(const SupportSet& a, int dense_cap) {
  const int n = a.dimension();
  const bool dense_ok = n <= std::min(dense_cap, kAbsoluteDenseCap);
  const bool pairs_ok = a.size() <= PairIndex::kMaxSupport;
  if (!dense_ok && !pairs_ok) {
    throw ResourceLimitError("quartic form: support too large for pair table and dimension above dense cap");
  }
  if (!dense_ok) {
    return QuarticForm::Route::pairs;
  }
  if (!pairs_ok) {
    return QuarticForm::Route::transform;
  }
  const double pair_cost = static_cast<double>(a.size()) * static_cast<double>(a.size());
  const double transform_cost = 2.0 * (n + 1) * std::ldexp(1.0, n);
  return pair_cost <= transform_cost ? QuarticForm::Route::pairs : QuarticForm::Route::transform;
}

}  // namespace

QuarticForm::QuarticForm(SupportSet a, int dense_cap) : QuarticForm(a, choose_route(a, dense_cap), dense_cap) {}

QuarticForm::QuarticForm(SupportSet a, Route route, int dense_cap)
    : a_(std::move(a)), route_(route), dense_cap_(dense_cap) {
  require_nonempty(a_, "quartic form");
  if (route_ == Route::pairs) {
    index_ = std::make_shared<const PairIndex>(a_);
  } else {
    require_dense(a_.dimension(), dense_cap_, "quartic form");
  }
}

double QuarticForm::pairs_value(std::span<const double> y, std::vector<double>& sums) const {
  const std::size_t m = a_.size();
  sums.assign(index_->sums().size(), 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = index_->row(i);
    const double yi = y[i];
    for (std::size_t j = 0; j < m; ++j) {
      sums[row[j]] += yi * y[j];
    }
  }
  double total = 0.0;
  for (double s : sums) {
    total += s * s;
  }
  return total;
}

double QuarticForm::value(std::span<const double> y) const {
  if (y.size() != a_.size()) {
    throw DomainError("quartic form: coordinate count mismatch");
  }
  if (route_ == Route::pairs) {
    std::vector<double> sums;
    return pairs_value(y, sums);
  }
  const SpectrumVector v(a_, std::vector<double>(y.begin(), y.end()));
  return big_f_transform(v, dense_cap_);
}

double QuarticForm::value_and_gradient(std::span<const double> y, std::span<double> grad) const {
  if (y.size() != a_.size() || grad.size() != a_.size()) {
    throw DomainError("quartic form: coordinate count mismatch");
  }
  const std::size_t m = a_.size();
  if (route_ == Route::pairs) {
    std::vector<double> sums;
    const double total = pairs_value(y, sums);
    for (std::size_t i = 0; i < m; ++i) {
      const auto row = index_->row(i);
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        acc += sums[row[j]] * y[j];
      }
      grad[i] = 4.0 * acc;
    }
    return total;
  }
  const int n = a_.dimension();
  std::vector<double> buf(std::size_t{1} << n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    buf[a_[i]] = y[i];
  }
  fwht_inplace(std::span<double>(buf));
  double s4 = 0.0;
  for (double& v : buf) {
    const double sq = v * v;
    s4 += sq * sq;
    v = sq * v;
  }
  fwht_inplace(std::span<double>(buf));
  const double scale = std::ldexp(1.0, -n);
  for (std::size_t i = 0; i < m; ++i) {
    grad[i] = 4.0 * buf[a_[i]] * scale;
  }
  return s4 * scale;
}

double big_f(const SpectrumVector& y) {
  require_nonempty(y.support, "big_f");
  const SupportSet& a = y.support;
  if (a.size() <= PairIndex::kMaxSupport) {
    return QuarticForm(a, QuarticForm::Route::pairs).value(y.coords);
  }
  std::unordered_map<Mask, double> sums;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      sums[a[i] ^ a[j]] += y.coords[i] * y.coords[j];
    }
  }
  double total = 0.0;
  for (const auto& [x, s] : sums) {
    total += s * s;
  }
  return total;
}

double big_f_transform(const SpectrumVector& y, int dense_cap) {
  require_nonempty(y.support, "big_f_transform");
  return raw_moments(synthesize(embed(y, dense_cap), dense_cap)).m4;
}

SpectrumVector big_f_grad(const SpectrumVector& y, int dense_cap) {
  require_nonempty(y.support, "big_f_grad");
  const CubeFunction f = synthesize(embed(y, dense_cap), dense_cap);
  CubeFunction cube(f.dimension());
  for (Mask x = 0; x < f.size(); ++x) {
    cube[x] = f[x] * f[x] * f[x];
  }
  const Spectrum s = analyze(cube, dense_cap);
  SpectrumVector out = restrict_to(s, y.support);
  for (double& v : out.coords) {
    v *= 4.0;
  }
  return out;
}

std::optional<SphereShape> recognize_sphere(const SupportSet& a) {
  if (a.empty()) {
    return std::nullopt;
  }
  const int k = weight(a[0]);
  for (Mask m : a) {
    if (weight(m) != k) {
      return std::nullopt;
    }
  }
  if (binomial(static_cast<unsigned long>(a.dimension()), static_cast<unsigned long>(k)) != to_big(a.size())) {
    return std::nullopt;
  }
  return SphereShape{a.dimension(), k};
}

BoundSet mu_upper(const SupportSet& a) {
  require_nonempty(a, "mu_upper");
  BoundSet out;
  out.cardinality_bound = a.size();
  out.multiplicity_bound = m_bound(a);
  out.best = static_cast<double>(std::min(out.cardinality_bound, out.multiplicity_bound));
  out.sphere = recognize_sphere(a);
  if (out.sphere) {
    out.sphere_sum_bound = sphere_sum_bound(out.sphere->k);
    out.best = std::min(out.best, to_double(BigRational(*out.sphere_sum_bound)));
    if (out.sphere->n > 0 && 2 * out.sphere->k <= out.sphere->n) {
      const double x = static_cast<double>(out.sphere->k) / out.sphere->n;
      out.sphere_psi_bound = std::exp2(out.sphere->n * psi_value(x));
      out.best = std::min(out.best, *out.sphere_psi_bound);
    }
  }
  return out;
}

double SymmetricMatrix::quadratic_form(std::span<const double> y) const {
  if (y.size() != size_) {
    throw DomainError("quadratic form: size mismatch");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < size_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < size_; ++j) {
      row += data_[i * size_ + j] * y[j];
    }
    total += y[i] * row;
  }
  return total;
}

bool SymmetricMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = i + 1; j < size_; ++j) {
      if (data_[i * size_ + j] != data_[j * size_ + i]) {
        return false;
      }
    }
  }
  return true;
}

SymmetricMatrix pair_weight_matrix(const SupportSet& a, const SpectrumVector& y) {
  require_nonempty(a, "pair_weight_matrix");
  if (!(y.support == a)) {
    throw DomainError("pair_weight_matrix: vector support differs from the matrix support");
  }
  const PairIndex index(a);
  const std::size_t m = a.size();
  std::vector<double> sums(index.sums().size(), 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      sums[index.id(i, j)] += y.coords[i] * y.coords[j];
    }
  }
  SymmetricMatrix t(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      t(i, j) = sums[index.id(i, j)];
    }
  }
  return t;
}

SplitPair decompose_last(const CubeFunction& f) {
  const int n = f.dimension();
  if (n < 1) {
    throw DomainError("decompose_last: dimension must be at least 1");
  }
  const std::size_t half = std::size_t{1} << (n - 1);
  SplitPair out{CubeFunction(n - 1), CubeFunction(n - 1), std::nullopt, std::nullopt};
  bool g0_zero = true;
  bool g1_zero = true;
  for (std::size_t x = 0; x < half; ++x) {
    const double lo = f[x];
    const double hi = f[x + half];
    out.g0[x] = 0.5 * (lo + hi);
    out.g1[x] = 0.5 * (lo - hi);
    g0_zero = g0_zero && out.g0[x] == 0.0;
    g1_zero = g1_zero && out.g1[x] == 0.0;
  }
  if (!g0_zero) {
    out.r0 = moments(out.g0).ratio;
  }
  if (!g1_zero) {
    out.r1 = moments(out.g1).ratio;
  }
  return out;
}

CubeFunction recombine_last(const CubeFunction& g0, const CubeFunction& g1) {
  if (g0.dimension() != g1.dimension()) {
    throw DomainError("recombine_last: dimension mismatch");
  }
  const std::size_t half = g0.size();
  CubeFunction f(g0.dimension() + 1);
  for (std::size_t x = 0; x < half; ++x) {
    f[x] = g0[x] + g1[x];
    f[x + half] = g0[x] - g1[x];
  }
  return f;
}

SplitMoments split_moments(const CubeFunction& g0, const CubeFunction& g1) {
  if (g0.dimension() != g1.dimension()) {
    throw DomainError("split_moments: dimension mismatch");
  }
  const RawMoments a = raw_moments(g0);
  const RawMoments b = raw_moments(g1);
  double cross = 0.0;
  for (std::size_t x = 0; x < g0.size(); ++x) {
    cross += g0[x] * g0[x] * g1[x] * g1[x];
  }
  return {a.m2, a.m4, b.m2, b.m4, cross * std::ldexp(1.0, -g0.dimension())};
}

double g_curve(const SplitMoments& m, double x) {
  if (x < 0.0) {
    throw DomainError("g_curve: x must be nonnegative");
  }
  const double num = m.g1_m4 * x * x + 6.0 * std::sqrt(m.g0_m4 * m.g1_m4) * x + m.g0_m4;
  const double den = m.g1_m2 * m.g1_m2 * x * x + 2.0 * m.g0_m2 * m.g1_m2 * x + m.g0_m2 * m.g0_m2;
  if (den == 0.0) {
    throw UndefinedRatioError("g_curve: both halves vanish");
  }
  return num / den;
}

double g_curve(const CubeFunction& g0, const CubeFunction& g1, double x) {
  return g_curve(split_moments(g0, g1), x);
}

double g_curve_max(const SplitMoments& m) {
  const bool zero0 = m.g0_m2 == 0.0;
  const bool zero1 = m.g1_m2 == 0.0;
  if (zero0 && zero1) {
    throw UndefinedRatioError("g_curve_max: both halves vanish");
  }
  if (zero1) {
    return m.g0_m4 / (m.g0_m2 * m.g0_m2);
  }
  if (zero0) {
    return m.g1_m4 / (m.g1_m2 * m.g1_m2);
  }
  const double r0 = m.g0_m4 / (m.g0_m2 * m.g0_m2);
  const double r1 = m.g1_m4 / (m.g1_m2 * m.g1_m2);
  if (r0 >= 9.0 * r1) {
    return r0;
  }
  if (r1 >= 9.0 * r0) {
    return r1;
  }
  return f_combine(r0, r1);
}

double g_curve_max(const CubeFunction& g0, const CubeFunction& g1) { return g_curve_max(split_moments(g0, g1)); }

std::optional<double> g_curve_argmax(const SplitMoments& m) {
  if (m.g0_m2 == 0.0 || m.g1_m2 == 0.0) {
    return std::nullopt;
  }
  const double r0 = m.g0_m4 / (m.g0_m2 * m.g0_m2);
  const double r1 = m.g1_m4 / (m.g1_m2 * m.g1_m2);
  if (r0 >= 9.0 * r1 || r1 >= 9.0 * r0) {
    return std::nullopt;
  }
  const double s0 = std::sqrt(r0);
  const double s1 = std::sqrt(r1);
  return std::sqrt(m.g0_m4) / std::sqrt(m.g1_m4) * (3.0 * s1 - s0) / (3.0 * s0 - s1);
}

}  // namespace cubenorm
