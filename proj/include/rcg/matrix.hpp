#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rcg/error.hpp"
#include "rcg/field.hpp"

namespace rcg {

/// Dense row-major matrix over one scalar field.
template <OrderedField F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(Rational(0))) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<F> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw DomainError(DomainErrorKind::DimensionMismatch, "matrix data has wrong size");
  }
  /// Nested initializer, one inner list per row.
  static Matrix from_rows(const std::vector<std::vector<F>>& rows) {
    const std::size_t r = rows.size(), c = r ? rows.front().size() : 0;
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw DomainError(DomainErrorKind::DimensionMismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(Rational(1));
    return m;
  }
  static Matrix diagonal(const std::vector<F>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  /// Matrix unit E_ij (0-based).
  static Matrix unit(std::size_t n, std::size_t i, std::size_t j) {
    Matrix m(n, n);
    m(i, j) = F(Rational(1));
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<F>& data() const { return data_; }

  std::vector<F> column(std::size_t j) const {
    std::vector<F> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }
  void set_column(std::size_t j, const std::vector<F>& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }
  std::vector<F> diagonal_entries() const {
    std::vector<F> out;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) out.push_back((*this)(i, i));
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  F trace() const {
    F s(Rational(0));
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
  }

  /// Applies f entrywise, possibly changing the scalar field.
  template <class Fn>
  auto map(Fn f) const -> Matrix<decltype(f(std::declval<const F&>()))> {
    using G = decltype(f(std::declval<const F&>()));
    std::vector<G> out;
    out.reserve(data_.size());
    for (const auto& x : data_) out.push_back(f(x));
    return Matrix<G>(rows_, cols_, std::move(out));
  }

  Matrix operator-() const { return map([](const F& x) { return F(-x); }); }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
    return out;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
    return out;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainError(DomainErrorKind::DimensionMismatch, "matrix product shapes differ");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& x = a(i, k);
        if (rcg::known_zero(x) && rcg::is_exact(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += x * b(k, j);
      }
    }
    return out;
  }
  friend Matrix operator*(const F& s, const Matrix& m) { return m.map([&](const F& x) { return F(s * x); }); }
  Matrix& operator+=(const Matrix& b) { return *this = *this + b; }
  Matrix& operator-=(const Matrix& b) { return *this = *this - b; }
  Matrix& operator*=(const Matrix& b) { return *this = *this * b; }

  /// Entrywise equality (exact for the tower field, structural for Puiseux).
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Every entry is known to vanish.
  bool known_zero() const {
    for (const auto& x : data_)
      if (!rcg::known_zero(x)) return false;
    return true;
  }
  bool is_exact() const {
    for (const auto& x : data_)
      if (!rcg::is_exact(x)) return false;
    return true;
  }

  /// Rows separated by "; ", entries by ", ".
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i) out += "; ";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) out += ", ";
        out += (*this)(i, j).to_string();
      }
    }
    return out;
  }

 private:
  void require_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_)
      throw DomainError(DomainErrorKind::DimensionMismatch, "matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

template <OrderedField F>
Matrix<F> commutator(const Matrix<F>& a, const Matrix<F>& b) {
  return a * b - b * a;
}

/// Rational matrix lifted into F.
template <OrderedField F>
Matrix<F> from_rational(std::size_t rows, std::size_t cols, const std::vector<Rational>& data) {
  std::vector<F> out;
  out.reserve(data.size());
  for (const auto& q : data) out.push_back(F(q));
  return Matrix<F>(rows, cols, std::move(out));
}

using TowerMatrix = Matrix<TowerScalar>;
using PuiseuxMatrix = Matrix<PuiseuxScalar>;

/// Constant embedding of the tower field into the Puiseux field.
inline PuiseuxMatrix embed(const TowerMatrix& m) {
  return m.map([](const TowerScalar& x) { return PuiseuxScalar(x); });
}

}  // namespace rcg
