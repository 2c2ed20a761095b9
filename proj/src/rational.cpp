#include "rcg/rational.hpp"

#include <utility>

namespace rcg {

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

int sign(const Rational& q) { return sgn(q); }

namespace {

std::optional<Integer> exact_isqrt(const Integer& z) {
  if (sgn(z) < 0) return std::nullopt;
  if (mpz_perfect_square_p(z.get_mpz_t()) == 0) return std::nullopt;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
  return r;
}

}  // namespace

std::optional<Rational> exact_sqrt(const Rational& q) {
  auto n = exact_isqrt(q.get_num());
  if (!n) return std::nullopt;
  auto d = exact_isqrt(q.get_den());
  if (!d) return std::nullopt;
  Rational r(*n, *d);
  r.canonicalize();
  return r;
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

namespace {

Integer pow2(unsigned long bits) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, bits);
  return p;
}

Rational over_pow2(const Integer& z, unsigned long bits) {
  Rational r(z, pow2(bits));
  r.canonicalize();
  return r;
}

}  // namespace

Rational round_down(const Rational& q, unsigned long bits) {
  if (q.get_den() == 1) return q;
  return over_pow2(floor(q * Rational(pow2(bits))), bits);
}

Rational round_up(const Rational& q, unsigned long bits) {
  if (q.get_den() == 1) return q;
  return over_pow2(ceil(q * Rational(pow2(bits))), bits);
}

Rational sqrt_lower(const Rational& q, unsigned long bits) {
  if (sgn(q) <= 0) return Rational(0);
  if (auto e = exact_sqrt(q)) return *e;
  // floor(sqrt(floor(q * 4^bits))) / 2^bits
  Integer scaled = floor(q * Rational(pow2(2 * bits)));
  Integer r;
  mpz_sqrt(r.get_mpz_t(), scaled.get_mpz_t());
  return over_pow2(r, bits);
}

Rational sqrt_upper(const Rational& q, unsigned long bits) {
  if (sgn(q) <= 0) return Rational(0);
  if (auto e = exact_sqrt(q)) return *e;
  Integer scaled = ceil(q * Rational(pow2(2 * bits)));
  Integer r;
  mpz_sqrt(r.get_mpz_t(), scaled.get_mpz_t());
  if (r * r < scaled) r += 1;
  return over_pow2(r, bits);
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::pair<Rational, Integer> split_square_factor(const Rational& q) {
  // sqrt(n/d) = sqrt(n*d)/d
  Integer k = q.get_num() * q.get_den();
  Integer s = 1;
  for (unsigned long p = 2; p <= 1000; ++p) {
    Integer p2 = p * p;
    if (p2 > k) break;
    while (mpz_divisible_p(k.get_mpz_t(), p2.get_mpz_t()) != 0) {
      k /= p2;
      s *= p;
    }
  }
  Rational scale(s, q.get_den());
  scale.canonicalize();
  return {scale, k};
}

}  // namespace rcg
