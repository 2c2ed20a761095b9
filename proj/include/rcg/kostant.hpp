#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rcg/error.hpp"
#include "rcg/matrix.hpp"
#include "rcg/rootsys.hpp"
#include "rcg/slgroup.hpp"

namespace rcg {

/// Exponents e with chi(a) = prod_k a_kk^e_k, one per simple root of A_{n-1}.
/// Derived from the cone data: gamma_j rewritten in diagonal coordinates,
/// shifted to vanish on the last coordinate (det a = 1) and divided by the gcd.
std::vector<LatticeVector> kostant_chars(std::size_t n);

/// Element of A with non-increasing diagonal, i.e. chi_delta(a) >= 1 for every simple delta.
template <OrderedField F>
class ChamberPoint {
 public:
  /// Throws NotInGroup when a is not in A and NotInChamber when the diagonal increases somewhere.
  explicit ChamberPoint(Matrix<F> a) : a_(std::move(a)) {
    if (!member_A(a_)) throw DomainError(DomainErrorKind::NotInGroup, "chamber points lie in A");
    for (std::size_t i = 0; i + 1 < a_.rows(); ++i)
      if (sign(a_(i, i) - a_(i + 1, i + 1)) < 0)
        throw DomainError(DomainErrorKind::NotInChamber, "diagonal is not non-increasing");
  }

  const Matrix<F>& matrix() const { return a_; }
  std::size_t n() const { return a_.rows(); }

 private:
  Matrix<F> a_;
};

/// Diagonal sorted in decreasing order: the chamber representative of a in A.
template <OrderedField F>
ChamberPoint<F> chamber_projection(const Matrix<F>& a) {
  std::vector<F> d = a.diagonal_entries();
  std::sort(d.begin(), d.end(), [](const F& x, const F& y) { return sign(x - y) > 0; });
  return ChamberPoint<F>(Matrix<F>::diagonal(d));
}

template <OrderedField F>
F character_value(const LatticeVector& e, const Matrix<F>& a) {
  F out(1);
  for (std::size_t k = 0; k < e.size(); ++k) {
    const long p = e[k];
    for (long s = 0; s < (p < 0 ? -p : p); ++s) out = p > 0 ? F(out * a(k, k)) : F(out * inverse(a(k, k), Truncation{}));
  }
  return out;
}

/// chi_i(b) - chi_i(a) for every character.
template <OrderedField F>
std::vector<F> kostant_slacks(const ChamberPoint<F>& a, const ChamberPoint<F>& b) {
  if (a.n() != b.n()) throw DomainError(DomainErrorKind::DimensionMismatch, "chamber points of different size");
  std::vector<F> out;
  for (const auto& e : kostant_chars(a.n())) out.push_back(character_value(e, b.matrix()) - character_value(e, a.matrix()));
  return out;
}

/// a is an A-component of K b iff chi_i(a) <= chi_i(b) for all i.
template <OrderedField F>
bool kostant_member(const ChamberPoint<F>& a, const ChamberPoint<F>& b) {
  for (const auto& s : kostant_slacks(a, b))
    if (sign(s) < 0) return false;
  return true;
}

/// Decides log a in conv(W log b) for rational diagonal a, b in SL_2 or SL_3
/// by a convex hull computation on certified rational approximations of the logs.
/// Throws PrecisionExhausted when log a is within hull_certification_slack of the boundary.
bool hull_oracle(const TowerMatrix& a, const TowerMatrix& b);

/// Certification slack of hull_oracle, in log coordinates.
extern const Rational hull_certification_slack;

struct OrbitSampleReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  /// Smallest and largest slack chi_i(b) - chi_i(a) over all samples and characters.
  double min_slack = 0;
  double max_slack = 0;
};

/// Samples k in SO_n as Givens-rotation words with rational parameters from
/// the given seed and checks that the chamber projection of a(k b) satisfies
/// the character inequalities against b.
OrbitSampleReport orbit_sample_check(const TowerMatrix& b, std::size_t trials, std::uint64_t seed);

/// The rotation in the (i, j) plane with cos = (1 - t^2)/(1 + t^2), sin = 2t/(1 + t^2).
TowerMatrix rational_rotation(std::size_t n, std::size_t i, std::size_t j, const Rational& t);

}  // namespace rcg
