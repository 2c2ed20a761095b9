#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rcg/error.hpp"
#include "rcg/matrix.hpp"

namespace rcg {

/// Monic characteristic polynomial det(lambda I - M), coefficients listed
/// from the constant term upwards (the last one is 1).
///
/// Faddeev-LeVerrier: only integer divisions occur, so the result is exact
/// whenever the entries are.
template <OrderedField F>
std::vector<F> char_poly(const Matrix<F>& m) {
  if (!m.is_square()) throw DomainError(DomainErrorKind::DimensionMismatch, "char_poly needs a square matrix");
  const std::size_t n = m.rows();
  std::vector<F> c(n + 1, F(Rational(0)));
  c[n] = F(Rational(1));
  Matrix<F> mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix<F> next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    c[n - k] = F(Rational(-1, static_cast<long>(k))) * (m * mk).trace();
  }
  return c;
}

template <OrderedField F>
F det(const Matrix<F>& m) {
  if (!m.is_square()) throw DomainError(DomainErrorKind::DimensionMismatch, "det needs a square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return F(Rational(1));
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const F c0 = char_poly(m).front();
  return n % 2 == 0 ? c0 : F(-c0);
}

/// Reduced row echelon form with exact sign-tested pivots.
template <OrderedField F>
struct Echelon {
  Matrix<F> reduced;
  std::vector<std::size_t> pivot_cols;
};

template <OrderedField F>
Echelon<F> row_reduce(Matrix<F> m, const Truncation& trunc = {}) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::optional<std::size_t> p;
    for (std::size_t i = row; i < m.rows(); ++i) {
      if (sign(m(i, col)) != 0) {
        p = i;
        break;
      }
    }
    if (!p) continue;
    if (*p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(*p, j));
    const F inv = inverse(m(row, col), trunc);
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) = j == col ? F(Rational(1)) : F(m(row, j) * inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || (known_zero(m(i, col)) && is_exact(m(i, col)))) continue;
      const F factor = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = j == col ? F(Rational(0)) : F(m(i, j) - factor * m(row, j));
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <OrderedField F>
std::size_t rank(const Matrix<F>& m, const Truncation& trunc = {}) {
  return row_reduce(m, trunc).pivot_cols.size();
}

/// Basis of the right null space, one vector per free column.
template <OrderedField F>
std::vector<std::vector<F>> kernel(const Matrix<F>& m, const Truncation& trunc = {}) {
  const Echelon<F> e = row_reduce(m, trunc);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(m.cols(), F(Rational(0)));
    v[free] = F(Rational(1));
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v[e.pivot_cols[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves M X = B for square nonsingular M.
template <OrderedField F>
Matrix<F> solve(const Matrix<F>& m, const Matrix<F>& rhs, const Truncation& trunc = {}) {
  if (!m.is_square() || rhs.rows() != m.rows())
    throw DomainError(DomainErrorKind::DimensionMismatch, "solve needs a square system with matching right-hand side");
  const std::size_t n = m.rows();
  Matrix<F> aug(n, n + rhs.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    for (std::size_t j = 0; j < rhs.cols(); ++j) aug(i, n + j) = rhs(i, j);
  }
  const Echelon<F> e = row_reduce(std::move(aug), trunc);
  if (e.pivot_cols.size() < n || e.pivot_cols[n - 1] != n - 1)
    throw DomainError(DomainErrorKind::SingularMatrix, "matrix is singular");
  Matrix<F> out(n, rhs.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) = e.reduced(i, n + j);
  return out;
}

template <OrderedField F>
std::vector<F> solve(const Matrix<F>& m, const std::vector<F>& b, const Truncation& trunc = {}) {
  return solve(m, Matrix<F>(b.size(), 1, b), trunc).column(0);
}

template <OrderedField F>
Matrix<F> inverse(const Matrix<F>& m, const Truncation& trunc = {}) {
  return solve(m, Matrix<F>::identity(m.rows()), trunc);
}

template <OrderedField F>
F dot(const std::vector<F>& a, const std::vector<F>& b) {
  F s(Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace rcg
