#pragma once

// Seeded generators for test corpora. Everything draws from one
// std::mt19937_64 so a corpus is reproducible from its seed.

#include "cubenorm/cube.hpp"

#include <random>
#include <vector>

namespace cubenorm {

using Rng = std::mt19937_64;

/// size distinct masks in dimension n, uniformly without replacement.
SupportSet random_support(Rng& rng, int n, std::size_t size);
/// Random subset of `pool` of the given size.
SupportSet random_subset(Rng& rng, const SupportSet& pool, std::size_t size);
/// Standard normal coordinates on the support (not normalized).
SpectrumVector random_coefficients(Rng& rng, const SupportSet& a);
/// Function with i.i.d. standard normal values.
CubeFunction random_function(Rng& rng, int n);
/// Function whose spectrum is random_coefficients on a.
CubeFunction random_function_on(Rng& rng, const SupportSet& a, int dense_cap = kDefaultDenseCap);

}  // namespace cubenorm
