#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rcg/rational.hpp"

namespace rcg {

/// Closed rational interval [lo, hi].
struct Interval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
};

struct TowerNode;
using TowerPtr = std::shared_ptr<const TowerNode>;

/// One level of a real quadratic tower Q(sqrt r_0)(sqrt r_1)...: the level
/// adjoins sqrt(radicand), where radicand is a positive non-square of the
/// field below, stored in that field's coordinates.
struct TowerNode {
  TowerPtr parent;
  std::vector<Rational> radicand;
  std::size_t depth = 0;
};

/// Exact element of a real quadratic tower over Q.
///
/// Coordinates are taken over the product basis prod_{i in mask} sqrt(r_i),
/// indexed by the bit mask. The representation is canonical per tower, so the
/// zero test is a coordinate test. Values carry their own tower; binary
/// operations lift both operands into a common tower, adjoining radicands
/// only when they are not already squares there.
class TowerScalar {
 public:
  TowerScalar() : coords_{Rational(0)} {}
  TowerScalar(long v) : coords_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
  TowerScalar(const Rational& q) : coords_{q} {}  // NOLINT(google-explicit-constructor)

  /// Builds a value from raw coordinates over `tower`; coords.size() must be 2^depth.
  TowerScalar(TowerPtr tower, std::vector<Rational> coords);

  std::size_t depth() const { return tower_ ? tower_->depth : 0; }
  const TowerPtr& tower() const { return tower_; }
  std::span<const Rational> coords() const { return coords_; }

  bool is_rational() const { return !tower_; }
  /// Requires is_rational().
  const Rational& rational_value() const { return coords_.front(); }

  bool is_zero() const;
  int sign() const;

  /// Rational enclosure on a 2^-bits grid (width shrinks as bits grow).
  Interval enclose(unsigned long bits) const;
  /// Enclosure of width <= width (width > 0).
  Interval approx(const Rational& width) const;
  double to_double() const;

  TowerScalar inverse() const;

  TowerScalar operator-() const;
  friend TowerScalar operator+(const TowerScalar& a, const TowerScalar& b);
  friend TowerScalar operator-(const TowerScalar& a, const TowerScalar& b);
  friend TowerScalar operator*(const TowerScalar& a, const TowerScalar& b);
  friend TowerScalar operator/(const TowerScalar& a, const TowerScalar& b);
  TowerScalar& operator+=(const TowerScalar& b) { return *this = *this + b; }
  TowerScalar& operator-=(const TowerScalar& b) { return *this = *this - b; }
  TowerScalar& operator*=(const TowerScalar& b) { return *this = *this * b; }
  TowerScalar& operator/=(const TowerScalar& b) { return *this = *this / b; }

  friend bool operator==(const TowerScalar& a, const TowerScalar& b);
  friend std::strong_ordering operator<=>(const TowerScalar& a, const TowerScalar& b);

  /// Radicands of the tower levels, bottom first.
  std::vector<TowerScalar> radicands() const;

  /// Text in the scalar grammar, e.g. "(1 + sqrt(5))/2".
  std::string to_string() const;

  /// Square root inside the current tower, if one exists (sign unspecified).
  std::optional<TowerScalar> sqrt_in_tower() const;

 private:
  void trim();

  TowerPtr tower_;
  std::vector<Rational> coords_;
};

/// Positive square root; adjoins a new level when `a` is not a square yet.
/// Throws DomainError(NotPositive) unless sign(a) = +1.
TowerScalar sqrt_positive(const TowerScalar& a);

inline int sign(const TowerScalar& a) { return a.sign(); }
inline bool is_zero(const TowerScalar& a) { return a.is_zero(); }
TowerScalar abs(const TowerScalar& a);

}  // namespace rcg
