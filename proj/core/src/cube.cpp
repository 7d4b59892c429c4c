#include "cubenorm/cube.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cubenorm {

namespace {

constexpr std::size_t kMaxEnumeratedSet = std::size_t{1} << 26;

void check_dimension(int n) {
  if (n < 0 || n > kMaxDimension) {
    throw DomainError("cube dimension must lie in [0, 63], got " + std::to_string(n));
  }
}

// Masks of weight exactly k among the low n bits, increasing (Gosper's hack).
void append_weight_class(int n, int k, std::vector<Mask>& out) {
  if (k < 0 || k > n) {
    return;
  }
  if (k == 0) {
    out.push_back(0);
    return;
  }
  Mask v = low_bits(k);
  const Mask limit = low_bits(n);
  while (true) {
    out.push_back(v);
    if (out.size() > kMaxEnumeratedSet) {
      throw ResourceLimitError("weight class too large to enumerate");
    }
    const Mask c = v & (~v + 1);
    const Mask r = v + c;
    if (r == 0 || r > limit) {
      break;
    }
    v = (((r ^ v) >> 2) / c) | r;
    if (v > limit) {
      break;
    }
  }
}

template <class Array>
SupportSet support_of_impl(const Array& a, double tol) {
  if (tol < 0.0) {
    throw DomainError("support tolerance must be nonnegative");
  }
  std::vector<Mask> out;
  for (Mask i = 0; i < a.size(); ++i) {
    if (std::abs(a[i]) > tol) {
      out.push_back(i);
    }
  }
  return SupportSet(a.dimension(), std::move(out));
}

}  // namespace

void require_dense(int n, int cap, const char* stage) {
  const int limit = std::min(cap, kAbsoluteDenseCap);
  if (n < 0) {
    throw DomainError(std::string(stage) + ": negative dimension");
  }
  if (n > limit) {
    throw ResourceLimitError(std::string(stage) + ": dimension " + std::to_string(n) +
                             " exceeds dense cap " + std::to_string(limit));
  }
}

CubePoint::CubePoint(int n, Mask mask) : n_(n), mask_(mask) {
  check_dimension(n);
  if ((mask & ~low_bits(n)) != 0) {
    throw DomainError("point has bits outside the low n bits");
  }
}

CubePoint operator+(const CubePoint& a, const CubePoint& b) {
  if (a.n_ != b.n_) {
    throw DomainError("adding points of different dimension");
  }
  return CubePoint(a.n_, a.mask_ ^ b.mask_);
}

SupportSet::SupportSet(int n, std::vector<Mask> elements) : n_(n), elements_(std::move(elements)) {
  check_dimension(n);
  std::sort(elements_.begin(), elements_.end());
  if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end()) {
    throw DomainError("support set contains duplicate elements");
  }
  const Mask outside = ~low_bits(n);
  for (Mask m : elements_) {
    if ((m & outside) != 0) {
      throw DomainError("support element has bits outside the low n bits");
    }
  }
}

SupportSet SupportSet::sphere(int n, int k) {
  check_dimension(n);
  if (k < 0 || k > n) {
    throw DomainError("sphere radius must lie in [0, n]");
  }
  std::vector<Mask> out;
  append_weight_class(n, k, out);
  return SupportSet(n, std::move(out));
}

SupportSet SupportSet::ball(int n, int k) {
  check_dimension(n);
  if (k < 0 || k > n) {
    throw DomainError("ball radius must lie in [0, n]");
  }
  std::vector<Mask> out;
  for (int w = 0; w <= k; ++w) {
    append_weight_class(n, w, out);
  }
  return SupportSet(n, std::move(out));
}

SupportSet SupportSet::span(int n, std::span<const Mask> generators) {
  check_dimension(n);
  std::vector<Mask> out{0};
  for (Mask g : generators) {
    if ((g & ~low_bits(n)) != 0) {
      throw DomainError("generator has bits outside the low n bits");
    }
    if (std::find(out.begin(), out.end(), g) != out.end()) {
      continue;  // already in the span
    }
    const std::size_t sz = out.size();
    for (std::size_t i = 0; i < sz; ++i) {
      out.push_back(out[i] ^ g);
    }
    if (out.size() > kMaxEnumeratedSet) {
      throw ResourceLimitError("span too large to enumerate");
    }
  }
  return SupportSet(n, std::move(out));
}

SupportSet SupportSet::singleton(int n, Mask m) { return SupportSet(n, std::vector<Mask>{m}); }

bool SupportSet::contains(Mask m) const { return std::binary_search(elements_.begin(), elements_.end(), m); }

std::optional<std::size_t> SupportSet::index_of(Mask m) const {
  const auto it = std::lower_bound(elements_.begin(), elements_.end(), m);
  if (it == elements_.end() || *it != m) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - elements_.begin());
}

SpectrumVector::SpectrumVector(SupportSet a, std::vector<double> y) : support(std::move(a)), coords(std::move(y)) {
  if (coords.size() != support.size()) {
    throw DomainError("spectrum vector length must equal the support size");
  }
}

SpectrumVector SpectrumVector::uniform(const SupportSet& a) {
  if (a.empty()) {
    throw DomainError("uniform vector on an empty support");
  }
  return SpectrumVector(a, std::vector<double>(a.size(), 1.0 / std::sqrt(static_cast<double>(a.size()))));
}

SpectrumVector SpectrumVector::indicator(const SupportSet& a, const SupportSet& b) {
  if (b.empty()) {
    throw DomainError("indicator of an empty subset");
  }
  std::vector<double> y(a.size(), 0.0);
  const double v = 1.0 / std::sqrt(static_cast<double>(b.size()));
  for (Mask m : b) {
    const auto idx = a.index_of(m);
    if (!idx) {
      throw DomainError("indicator subset is not contained in the support");
    }
    y[*idx] = v;
  }
  return SpectrumVector(a, std::move(y));
}

double SpectrumVector::norm() const {
  double s = 0.0;
  for (double v : coords) {
    s += v * v;
  }
  return std::sqrt(s);
}

bool SpectrumVector::is_normalized(double tol) const {
  double s = 0.0;
  for (double v : coords) {
    s += v * v;
  }
  return std::abs(s - 1.0) <= tol;
}

SpectrumVector SpectrumVector::normalized() const {
  const double nrm = norm();
  if (nrm == 0.0) {
    throw DomainError("cannot normalize the zero vector");
  }
  SpectrumVector out = *this;
  for (double& v : out.coords) {
    v /= nrm;
  }
  return out;
}

Spectrum analyze(const CubeFunction& f, int dense_cap) {
  require_dense(f.dimension(), dense_cap, "analyze");
  std::vector<double> data(f.values().begin(), f.values().end());
  fwht_inplace(std::span<double>(data));
  const double scale = std::ldexp(1.0, -f.dimension());
  for (double& v : data) {
    v *= scale;
  }
  return Spectrum(f.dimension(), std::move(data));
}

CubeFunction synthesize(const Spectrum& s, int dense_cap) {
  require_dense(s.dimension(), dense_cap, "synthesize");
  std::vector<double> data(s.values().begin(), s.values().end());
  fwht_inplace(std::span<double>(data));
  return CubeFunction(s.dimension(), std::move(data));
}

namespace reference {

Spectrum analyze_naive(const CubeFunction& f) {
  require_dense(f.dimension(), 12, "analyze_naive");
  Spectrum out(f.dimension());
  const double scale = std::ldexp(1.0, -f.dimension());
  for (Mask a = 0; a < f.size(); ++a) {
    double acc = 0.0;
    for (Mask x = 0; x < f.size(); ++x) {
      acc += inner_parity(a, x) ? -f[x] : f[x];
    }
    out[a] = acc * scale;
  }
  return out;
}

CubeFunction synthesize_naive(const Spectrum& s) {
  require_dense(s.dimension(), 12, "synthesize_naive");
  CubeFunction out(s.dimension());
  for (Mask x = 0; x < s.size(); ++x) {
    double acc = 0.0;
    for (Mask a = 0; a < s.size(); ++a) {
      acc += inner_parity(a, x) ? -s[a] : s[a];
    }
    out[x] = acc;
  }
  return out;
}

}  // namespace reference

RawMoments raw_moments(const CubeFunction& f) {
  double s2 = 0.0;
  double s4 = 0.0;
  for (double v : f.values()) {
    const double sq = v * v;
    s2 += sq;
    s4 += sq * sq;
  }
  const double scale = std::ldexp(1.0, -f.dimension());
  return {s2 * scale, s4 * scale};
}

Moments moments(const CubeFunction& f) {
  const RawMoments raw = raw_moments(f);
  if (raw.m2 == 0.0) {
    throw UndefinedRatioError("moment ratio of the zero function is undefined");
  }
  return {raw.m2, raw.m4, raw.m4 / (raw.m2 * raw.m2)};
}

SupportSet support_of(const CubeFunction& f, double tol) { return support_of_impl(f, tol); }
SupportSet support_of(const Spectrum& s, double tol) { return support_of_impl(s, tol); }

CubeFunction character(int n, Mask alpha) {
  CubeFunction out(n);
  if ((alpha & ~low_bits(n)) != 0) {
    throw DomainError("character index has bits outside the low n bits");
  }
  for (Mask x = 0; x < out.size(); ++x) {
    out[x] = inner_parity(alpha, x) ? -1.0 : 1.0;
  }
  return out;
}

Spectrum embed(const SpectrumVector& y, int dense_cap) {
  require_dense(y.support.dimension(), dense_cap, "embed");
  Spectrum out(y.support.dimension());
  for (std::size_t i = 0; i < y.coords.size(); ++i) {
    out[y.support[i]] = y.coords[i];
  }
  return out;
}

SpectrumVector restrict_to(const Spectrum& s, const SupportSet& a) {
  if (a.dimension() != s.dimension()) {
    throw DomainError("restrict_to: dimension mismatch");
  }
  std::vector<double> y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    y[i] = s[a[i]];
  }
  return SpectrumVector(a, std::move(y));
}

}  // namespace cubenorm
