#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>

namespace rcg {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

int sign(const Rational& q);

/// Exact square root when q is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& q);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// Largest multiple of 2^-bits that is <= q (resp. smallest >= q).
Rational round_down(const Rational& q, unsigned long bits);
Rational round_up(const Rational& q, unsigned long bits);

/// Bounds on sqrt(q) for q >= 0 on the 2^-bits grid.
Rational sqrt_lower(const Rational& q, unsigned long bits);
Rational sqrt_upper(const Rational& q, unsigned long bits);

Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);

/// Writes q = s^2 * k / d^2 with k a positive integer whose small square
/// factors are removed; returns {s/d, k}. q must be positive.
std::pair<Rational, Integer> split_square_factor(const Rational& q);

}  // namespace rcg
