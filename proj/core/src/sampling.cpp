#include "cubenorm/sampling.hpp"

#include <algorithm>
#include <unordered_set>

namespace cubenorm {

SupportSet random_support(Rng& rng, int n, std::size_t size) {
  if (n < 0 || n > kMaxDimension) {
    throw DomainError("random_support: bad dimension");
  }
  if (n < 63 && size > (std::uint64_t{1} << n)) {
    throw DomainError("random_support: more points requested than the cube has");
  }
  std::uniform_int_distribution<Mask> pick(0, low_bits(n));
  std::unordered_set<Mask> seen;
  std::vector<Mask> out;
  out.reserve(size);
  while (out.size() < size) {
    const Mask m = pick(rng);
    if (seen.insert(m).second) {
      out.push_back(m);
    }
  }
  return SupportSet(n, std::move(out));
}

SupportSet random_subset(Rng& rng, const SupportSet& pool, std::size_t size) {
  if (size > pool.size()) {
    throw DomainError("random_subset: size exceeds pool");
  }
  std::vector<Mask> items(pool.begin(), pool.end());
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < size; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, items.size() - 1);
    std::swap(items[i], items[pick(rng)]);
  }
  items.resize(size);
  return SupportSet(pool.dimension(), std::move(items));
}

SpectrumVector random_coefficients(Rng& rng, const SupportSet& a) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> y(a.size());
  for (double& v : y) {
    v = normal(rng);
  }
  return SpectrumVector(a, std::move(y));
}

CubeFunction random_function(Rng& rng, int n) {
  CubeFunction f(n);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& v : f.values()) {
    v = normal(rng);
  }
  return f;
}

CubeFunction random_function_on(Rng& rng, const SupportSet& a, int dense_cap) {
  return synthesize(embed(random_coefficients(rng, a), dense_cap), dense_cap);
}

}  // namespace cubenorm
