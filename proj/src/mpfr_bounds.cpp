#include "mpfr_bounds.hpp"

#include <algorithm>

namespace rcg::detail {

Rational to_rational(const Mpfr& x) {
  Integer mant;
  const mpfr_exp_t exp = mpfr_get_z_2exp(mant.get_mpz_t(), x.get());
  Rational out(mant);
  if (exp >= 0) {
    mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(exp));
  } else {
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(-exp));
  }
  return out;
}

namespace {

Rational pow_rounded(const Rational& T, const Rational& e, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  Mpfr base(prec), ex(prec), out(prec);
  // round the base and exponent so the final result stays on the requested side
  const bool up = rnd == MPFR_RNDU;
  const bool base_big = T >= 1;
  const bool exp_pos = sgn(e) >= 0;
  // T^e increases in T when e >= 0 and in e when T >= 1
  mpfr_set_q(base.get(), T.get_mpq_t(), (up == exp_pos) ? MPFR_RNDU : MPFR_RNDD);
  mpfr_set_q(ex.get(), e.get_mpq_t(), (up == base_big) ? MPFR_RNDU : MPFR_RNDD);
  mpfr_pow(out.get(), base.get(), ex.get(), rnd);
  return to_rational(out);
}

}  // namespace

Interval pow_bounds(const Rational& T, const Rational& e, mpfr_prec_t prec) {
  return {pow_rounded(T, e, prec, MPFR_RNDD), pow_rounded(T, e, prec, MPFR_RNDU)};
}

Interval log_bounds(const Interval& x, mpfr_prec_t prec) {
  Mpfr lo(prec), hi(prec);
  mpfr_set_q(lo.get(), x.lo.get_mpq_t(), MPFR_RNDD);
  mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_set_q(hi.get(), x.hi.get_mpq_t(), MPFR_RNDU);
  mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
  return {to_rational(lo), to_rational(hi)};
}

Interval mul(const Interval& a, const Interval& b) {
  const Rational p[] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(std::begin(p), std::end(p)), *std::max_element(std::begin(p), std::end(p))};
}

}  // namespace rcg::detail
