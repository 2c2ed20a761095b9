#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "rcg/error.hpp"
#include "rcg/linalg.hpp"
#include "rcg/matrix.hpp"
#include "rcg/nilpotent.hpp"

namespace rcg {

// Exact predicates for the subgroups of SL_n. Zero tests go through sign(),
// so truncated Puiseux entries whose value is unknown raise IndeterminateSign.

template <OrderedField F>
bool entry_zero(const F& x) {
  return sign(x) == 0;
}

template <OrderedField F>
bool entry_one(const F& x) {
  return sign(x - F(Rational(1))) == 0;
}

template <OrderedField F>
bool is_identity(const Matrix<F>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i == j ? !entry_one(m(i, j)) : !entry_zero(m(i, j))) return false;
  return true;
}

template <OrderedField F>
bool in_sl(const Matrix<F>& g) {
  return g.is_square() && entry_one(det(g));
}

template <OrderedField F>
bool is_upper_triangular(const Matrix<F>& g) {
  for (std::size_t i = 1; i < g.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!entry_zero(g(i, j))) return false;
  return true;
}

template <OrderedField F>
bool is_diagonal(const Matrix<F>& g) {
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (i != j && !entry_zero(g(i, j))) return false;
  return true;
}

/// SO_n: g g^T = I and det g = 1.
template <OrderedField F>
bool member_K(const Matrix<F>& g) {
  return g.is_square() && is_identity(g * g.transpose()) && in_sl(g);
}

/// Positive diagonal with det 1.
template <OrderedField F>
bool member_A(const Matrix<F>& g) {
  if (!g.is_square() || !is_diagonal(g)) return false;
  for (std::size_t i = 0; i < g.rows(); ++i)
    if (sign(g(i, i)) <= 0) return false;
  return in_sl(g);
}

/// Unipotent upper triangular.
template <OrderedField F>
bool member_U(const Matrix<F>& g) {
  if (!g.is_square() || !is_upper_triangular(g)) return false;
  for (std::size_t i = 0; i < g.rows(); ++i)
    if (!entry_one(g(i, i))) return false;
  return true;
}

/// Diagonal with entries +-1 and det 1.
template <OrderedField F>
bool member_M(const Matrix<F>& g) {
  if (!g.is_square() || !is_diagonal(g)) return false;
  for (std::size_t i = 0; i < g.rows(); ++i)
    if (!entry_one(g(i, i)) && !entry_one(-g(i, i))) return false;
  return in_sl(g);
}

/// Signed permutation matrix with det 1.
template <OrderedField F>
bool member_N(const Matrix<F>& g) {
  if (!g.is_square()) return false;
  const std::size_t n = g.rows();
  std::vector<int> col_hits(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int hits = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (entry_zero(g(i, j))) continue;
      if (!entry_one(g(i, j)) && !entry_one(-g(i, j))) return false;
      ++hits;
      ++col_hits[j];
    }
    if (hits != 1) return false;
  }
  for (int c : col_hits)
    if (c != 1) return false;
  return in_sl(g);
}

/// Upper triangular with det 1.
template <OrderedField F>
bool member_B(const Matrix<F>& g) {
  return g.is_square() && is_upper_triangular(g) && in_sl(g);
}

/// Cartan involution X -> -X^T.
template <OrderedField F>
Matrix<F> theta(const Matrix<F>& x) {
  return -x.transpose();
}

template <OrderedField F>
struct RootSpaceDecomposition {
  /// Component in the diagonal subalgebra.
  Matrix<F> zero_part;
  /// (alpha, X_ij) for every nonzero off-diagonal entry.
  std::vector<std::pair<RootIndex, F>> root_parts;

  Matrix<F> reconstruct() const {
    Matrix<F> out = zero_part;
    for (const auto& [r, c] : root_parts) out(r.i, r.j) += c;
    return out;
  }
};

template <OrderedField F>
RootSpaceDecomposition<F> root_space_decompose(const Matrix<F>& x) {
  if (!x.is_square() || !entry_zero(x.trace()))
    throw DomainError(DomainErrorKind::DimensionMismatch, "root space decomposition needs a traceless square matrix");
  const std::size_t n = x.rows();
  RootSpaceDecomposition<F> out{Matrix<F>(n, n), {}};
  for (std::size_t i = 0; i < n; ++i) {
    out.zero_part(i, i) = x(i, i);
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !entry_zero(x(i, j))) out.root_parts.push_back({{i, j}, x(i, j)});
  }
  return out;
}

/// Coordinates of a traceless matrix over the basis of sl_n: the off-diagonal
/// units E_ij in row-major order, then H_k = E_kk - E_{k+1,k+1}.
template <OrderedField F>
std::vector<F> sl_coordinates(const Matrix<F>& x) {
  const std::size_t n = x.rows();
  std::vector<F> c;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) c.push_back(x(i, j));
  F running(Rational(0));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    running += x(k, k);
    c.push_back(running);
  }
  return c;
}

template <OrderedField F>
std::vector<Matrix<F>> sl_basis(std::size_t n) {
  std::vector<Matrix<F>> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) basis.push_back(Matrix<F>::unit(n, i, j));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    Matrix<F> h(n, n);
    h(k, k) = F(Rational(1));
    h(k + 1, k + 1) = F(Rational(-1));
    basis.push_back(h);
  }
  return basis;
}

/// Matrix of ad(X) on the basis of sl_n.
template <OrderedField F>
Matrix<F> ad_matrix(const Matrix<F>& x) {
  const auto basis = sl_basis<F>(x.rows());
  const std::size_t d = basis.size();
  Matrix<F> out(d, d);
  for (std::size_t col = 0; col < d; ++col) out.set_column(col, sl_coordinates(commutator(x, basis[col])));
  return out;
}

/// B(X, Y) = tr(ad X ad Y), computed from the adjoint matrices.
template <OrderedField F>
F killing_form(const Matrix<F>& x, const Matrix<F>& y) {
  return (ad_matrix(x) * ad_matrix(y)).trace();
}

/// B_theta(X, Y) = -B(X, theta Y).
template <OrderedField F>
F killing_theta(const Matrix<F>& x, const Matrix<F>& y) {
  return -killing_form(x, theta(y));
}

/// chi_alpha(a) = a_i / a_j.
template <OrderedField F>
F chi(const RootIndex& alpha, const Matrix<F>& a, const Truncation& trunc = {}) {
  if (!member_A(a)) throw DomainError(DomainErrorKind::NotInGroup, "character needs an element of A");
  return a(alpha.i, alpha.i) * inverse(a(alpha.j, alpha.j), trunc);
}

/// a exp(X) a^-1 for X in the root space of alpha; checked against exp(chi_alpha(a) X).
template <OrderedField F>
Matrix<F> conj_root_vector(const Matrix<F>& a, const RootIndex& alpha, const Matrix<F>& x, const Truncation& trunc = {}) {
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (!(i == alpha.i && j == alpha.j) && !entry_zero(x(i, j)))
        throw DomainError(DomainErrorKind::DimensionMismatch, "vector is not in the root space");
  const Matrix<F> out = a * exp_nilpotent(x) * inverse(a, trunc);
  const Matrix<F> expected = exp_nilpotent(chi(alpha, a, trunc) * x);
  if (!(out - expected).known_zero()) throw Error("conjugation disagrees with the character rule");
  return out;
}

/// The six representatives of N/M for SL_3, in the listed order.
inline std::vector<TowerMatrix> weyl_reps_sl3() {
  auto m = [](std::vector<long> v) {
    std::vector<Rational> q(v.begin(), v.end());
    return from_rational<TowerScalar>(3, 3, q);
  };
  return {m({1, 0, 0, 0, 1, 0, 0, 0, 1}),  m({0, -1, 0, 1, 0, 0, 0, 0, 1}), m({1, 0, 0, 0, 0, -1, 0, 1, 0}),
          m({0, 0, -1, 0, 1, 0, 1, 0, 0}), m({0, 0, 1, 1, 0, 0, 0, 1, 0}),  m({0, 1, 0, 0, 0, 1, 1, 0, 0})};
}

/// Underlying permutation of a signed permutation matrix: perm[i] = column of row i's entry.
template <OrderedField F>
std::vector<std::size_t> permutation_pattern(const Matrix<F>& g) {
  std::vector<std::size_t> perm(g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (!entry_zero(g(i, j))) perm[i] = j;
  return perm;
}

struct QuotientTable {
  /// One representative per class, first occurrence in the input order.
  std::vector<TowerMatrix> reps;
  /// class_of[k] = class index of the k-th input element.
  std::vector<std::size_t> class_of;
  /// table[a][b] = class of reps[a] * reps[b].
  std::vector<std::vector<std::size_t>> table;
};

/// Classes of elements of N modulo M (two signed permutations agree mod M iff
/// their permutation patterns agree) and the induced multiplication table.
QuotientTable n_mod_m_classes(const std::vector<TowerMatrix>& elements);

/// Every signed permutation matrix of det 1 (the group N for SL_n).
std::vector<TowerMatrix> enumerate_N(std::size_t n);

/// Brute-force isomorphism test between two finite group multiplication tables.
bool tables_isomorphic(const std::vector<std::vector<std::size_t>>& a, const std::vector<std::vector<std::size_t>>& b);

}  // namespace rcg
