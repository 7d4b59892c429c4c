#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace cubenorm {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Binomial coefficient C(n, k); zero when k > n.
BigInt binomial(unsigned long n, unsigned long k);

BigInt to_big(std::uint64_t v);
BigRational make_rational(const BigInt& num, const BigInt& den);

/// Always "p/q", including integers ("7/1") so consumers parse one shape.
std::string rational_string(const BigRational& q);

/// Accepts "p/q" or a bare integer "p".
BigRational parse_rational(std::string_view text);

double to_double(const BigRational& q);

/// Compares a rational against sqrt(a) * sqrt(b) exactly by squaring. Returns
/// sign(q - sqrt(a*b)); requires q >= 0 semantics only in the sense that a
/// negative q always compares below.
int compare_with_sqrt_product(const BigRational& q, const BigRational& a, const BigRational& b);

}  // namespace cubenorm
