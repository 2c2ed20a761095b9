#pragma once

#include <mpfr.h>

#include "rcg/rational.hpp"
#include "rcg/tower.hpp"

namespace rcg::detail {

/// RAII holder for an mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

/// Exact rational value of a finite mpfr number.
Rational to_rational(const Mpfr& x);

/// Rational bounds on T^e for rational T > 0.
Interval pow_bounds(const Rational& T, const Rational& e, mpfr_prec_t prec);

/// Rational bounds on log(x) for x in [lo, hi], lo > 0.
Interval log_bounds(const Interval& x, mpfr_prec_t prec);

Interval mul(const Interval& a, const Interval& b);

}  // namespace rcg::detail
