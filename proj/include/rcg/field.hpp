#pragma once

#include <concepts>
#include <string>

#include "rcg/puiseux.hpp"
#include "rcg/rational.hpp"
#include "rcg/tower.hpp"

namespace rcg {

/// Relative truncation order used wherever a Puiseux operation must stop a
/// series: the distance in exponent below the leading term that is kept.
struct Truncation {
  Rational relative_order{8};
};

inline TowerScalar inverse(const TowerScalar& x, const Truncation&) { return x.inverse(); }
inline PuiseuxScalar inverse(const PuiseuxScalar& x, const Truncation& t) { return x.inverse(t.relative_order); }

inline TowerScalar sqrt_positive(const TowerScalar& x, const Truncation&) { return sqrt_positive(x); }
inline PuiseuxScalar sqrt_positive(const PuiseuxScalar& x, const Truncation& t) {
  return sqrt_positive(x, t.relative_order);
}

/// No term is known to be nonzero. Exact for the tower field.
inline bool known_zero(const TowerScalar& x) { return x.is_zero(); }
inline bool known_zero(const PuiseuxScalar& x) { return x.known_zero(); }

/// Exact values are never truncated.
inline bool is_exact(const TowerScalar&) { return true; }
inline bool is_exact(const PuiseuxScalar& x) { return x.is_exact(); }

/// Known to vanish at least down to X^bound (always exact for the tower field).
inline bool vanishes_through(const TowerScalar& x, const Rational&) { return x.is_zero(); }
inline bool vanishes_through(const PuiseuxScalar& x, const Rational& bound) {
  return x.known_zero() && (!x.tail() || *x.tail() <= bound);
}

template <class F>
concept OrderedField = requires(const F a, const F b, const Truncation t) {
  { a + b } -> std::convertible_to<F>;
  { a - b } -> std::convertible_to<F>;
  { a * b } -> std::convertible_to<F>;
  { -a } -> std::convertible_to<F>;
  { inverse(a, t) } -> std::convertible_to<F>;
  { sqrt_positive(a, t) } -> std::convertible_to<F>;
  { sign(a) } -> std::convertible_to<int>;
  { known_zero(a) } -> std::convertible_to<bool>;
  { a.to_string() } -> std::convertible_to<std::string>;
  F(Rational(1));
};

static_assert(OrderedField<TowerScalar>);
static_assert(OrderedField<PuiseuxScalar>);

}  // namespace rcg
