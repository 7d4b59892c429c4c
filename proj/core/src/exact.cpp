#include "cubenorm/exact.hpp"

#include "cubenorm/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace cubenorm {

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt out;
  if (k > n) {
    return out;  // zero
  }
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

BigInt to_big(std::uint64_t v) {
  // mpz_class has no portable uint64 constructor on every platform.
  BigInt hi = static_cast<unsigned long>(v >> 32);
  hi <<= 32;
  hi += static_cast<unsigned long>(v & 0xffffffffULL);
  return hi;
}

BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) {
    throw DomainError("rational with zero denominator");
  }
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

std::string rational_string(const BigRational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

BigRational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return BigRational(BigInt(std::string(text)));
    }
    BigInt num(std::string(text.substr(0, slash)));
    BigInt den(std::string(text.substr(slash + 1)));
    return make_rational(num, den);
  } catch (const std::invalid_argument&) {
    throw DomainError("malformed rational: " + std::string(text));
  }
}

double to_double(const BigRational& q) {
  // mpq_get_d truncates; go through long double division of scaled parts for
  // values whose num/den exceed double range individually.
  const long num_bits = static_cast<long>(mpz_sizeinbase(q.get_num().get_mpz_t(), 2));
  const long den_bits = static_cast<long>(mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
  if (num_bits < 1000 && den_bits < 1000) {
    return q.get_d();
  }
  long exp_num = 0;
  long exp_den = 0;
  const double mn = mpz_get_d_2exp(&exp_num, q.get_num().get_mpz_t());
  const double md = mpz_get_d_2exp(&exp_den, q.get_den().get_mpz_t());
  return std::ldexp(mn / md, static_cast<int>(exp_num - exp_den));
}

int compare_with_sqrt_product(const BigRational& q, const BigRational& a, const BigRational& b) {
  if (a < 0 || b < 0) {
    throw DomainError("square root of a negative rational");
  }
  if (q < 0) {
    return -1;
  }
  const BigRational lhs = q * q;
  const BigRational rhs = a * b;
  return cmp(lhs, rhs) < 0 ? -1 : (cmp(lhs, rhs) > 0 ? 1 : 0);
}

}  // namespace cubenorm
