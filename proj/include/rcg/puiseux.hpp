#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "rcg/rational.hpp"
#include "rcg/tower.hpp"

namespace rcg {

struct PuiseuxTerm {
  Rational exponent;
  TowerScalar coeff;
};

/// Truncated Puiseux series sum c_k X^{e_k} over the tower field, with X
/// larger than every constant: the leading term is the one with the LARGEST
/// exponent.
///
/// A value is either exact (a finite sum) or carries a tail bound e, written
/// "+ O(X^e)", meaning every omitted term has exponent <= e. Stored terms
/// always have exponents strictly above the tail bound.
class PuiseuxScalar {
 public:
  PuiseuxScalar() = default;
  PuiseuxScalar(long v) : PuiseuxScalar(TowerScalar(v)) {}  // NOLINT(google-explicit-constructor)
  PuiseuxScalar(const Rational& q) : PuiseuxScalar(TowerScalar(q)) {}  // NOLINT(google-explicit-constructor)
  PuiseuxScalar(const TowerScalar& c);  // NOLINT(google-explicit-constructor)

  static PuiseuxScalar monomial(const TowerScalar& coeff, const Rational& exponent);
  static PuiseuxScalar X() { return monomial(TowerScalar(1), Rational(1)); }
  /// Terms in any order; merges equal exponents, drops zeros and anything at or below `tail`.
  static PuiseuxScalar from_terms(std::vector<PuiseuxTerm> terms, std::optional<Rational> tail = std::nullopt);
  /// O(X^e) with no known terms.
  static PuiseuxScalar big_o(const Rational& e) { return from_terms({}, e); }

  const std::vector<PuiseuxTerm>& terms() const { return terms_; }
  const std::optional<Rational>& tail() const { return tail_; }
  bool is_exact() const { return !tail_; }

  /// lcm of the exponent denominators.
  Integer ramification() const;
  std::optional<Rational> lead_exponent() const;
  /// Largest exponent that may carry a nonzero coefficient (lead, else tail bound).
  /// Throws for exact zero.
  Rational top_exponent() const;
  const TowerScalar& lead_coefficient() const { return terms_.front().coeff; }

  /// Sign of the leading coefficient. Throws IndeterminateSign when the value
  /// is truncated and no term is known.
  int sign() const;
  /// Strict zero test; throws IndeterminateSign when nothing is known.
  bool is_zero() const;
  /// True when no term is known (exact zero, or a bare O(...) tail).
  bool known_zero() const { return terms_.empty(); }

  bool is_constant() const;
  /// Coefficient of X^0 among the stored terms.
  TowerScalar constant_term() const;

  /// Drops every term with exponent <= e and records the tail bound.
  PuiseuxScalar truncated(const Rational& e) const;

  /// Geometric-series inverse whose relative precision is min(relative_order,
  /// the relative precision of *this): a * inverse(a) = 1 + O(X^-relative_order).
  PuiseuxScalar inverse(const Rational& relative_order) const;

  PuiseuxScalar operator-() const;
  friend PuiseuxScalar operator+(const PuiseuxScalar& a, const PuiseuxScalar& b);
  friend PuiseuxScalar operator-(const PuiseuxScalar& a, const PuiseuxScalar& b);
  friend PuiseuxScalar operator*(const PuiseuxScalar& a, const PuiseuxScalar& b);
  PuiseuxScalar& operator+=(const PuiseuxScalar& b) { return *this = *this + b; }
  PuiseuxScalar& operator-=(const PuiseuxScalar& b) { return *this = *this - b; }
  PuiseuxScalar& operator*=(const PuiseuxScalar& b) { return *this = *this * b; }

  /// Structural equality: same terms and same tail.
  friend bool operator==(const PuiseuxScalar& a, const PuiseuxScalar& b);
  /// Order comparison via the sign of the difference (may throw IndeterminateSign).
  friend std::strong_ordering operator<=>(const PuiseuxScalar& a, const PuiseuxScalar& b);

  std::string to_string() const;

 private:
  std::vector<PuiseuxTerm> terms_;
  std::optional<Rational> tail_;
};

/// Square root with leading term sqrt(c) X^{e/2}; relative precision as for inverse.
PuiseuxScalar sqrt_positive(const PuiseuxScalar& a, const Rational& relative_order);

inline int sign(const PuiseuxScalar& a) { return a.sign(); }
inline bool is_zero(const PuiseuxScalar& a) { return a.is_zero(); }

/// Exact value of the stored terms at X = T (T > 0). Exponent denominators
/// must be powers of two; anything else throws UnsupportedExponent.
TowerScalar specialize(const PuiseuxScalar& a, const Rational& T);
/// Enclosure of the stored terms at X = T, any exponent denominators.
Interval specialize_approx(const PuiseuxScalar& a, const Rational& T, const Rational& width);

}  // namespace rcg
