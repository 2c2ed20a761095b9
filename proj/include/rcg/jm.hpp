#pragma once

#include <cstddef>
#include <vector>

#include "rcg/decomp.hpp"
#include "rcg/error.hpp"
#include "rcg/linalg.hpp"
#include "rcg/matrix.hpp"
#include "rcg/nilpotent.hpp"
#include "rcg/slgroup.hpp"

namespace rcg {

/// [H,X] = 2X, [H,Y] = -2Y, [X,Y] = H.
template <OrderedField F>
struct Sl2Triple {
  Matrix<F> x, h, y;
};

template <OrderedField F>
bool is_sl2_triple(const Sl2Triple<F>& t) {
  return (commutator(t.h, t.x) - F(2) * t.x).known_zero() && (commutator(t.h, t.y) + F(2) * t.y).known_zero() &&
         (commutator(t.x, t.y) - t.h).known_zero();
}

namespace detail {

template <OrderedField F>
Matrix<F> columns_matrix(std::size_t n, const std::vector<std::vector<F>>& cols) {
  Matrix<F> m(n, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
  return m;
}

template <OrderedField F>
std::vector<F> apply(const Matrix<F>& m, const std::vector<F>& v) {
  std::vector<F> out(m.rows(), F(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

}  // namespace detail

/// Jordan chains v, Xv, ..., X^(L-1)v give a basis in which H is diagonal with
/// weights 2t - L + 1 on X^t v and Y X^(t+1) v = (t+1)(L-1-t) X^t v.
/// Throws ZeroInput or NotNilpotent.
template <OrderedField F>
Sl2Triple<F> jacobson_morozov(const Matrix<F>& x) {
  if (!x.is_square()) throw DomainError(DomainErrorKind::DimensionMismatch, "jacobson_morozov needs a square matrix");
  if (x.known_zero()) throw DomainError(DomainErrorKind::ZeroInput, "jacobson_morozov needs a nonzero matrix");
  if (!is_nilpotent(x)) throw DomainError(DomainErrorKind::NotNilpotent, "jacobson_morozov needs a nilpotent matrix");
  const std::size_t n = x.rows();
  // kernels[l] spans ker X^l
  std::vector<std::vector<std::vector<F>>> kernels{{}};
  Matrix<F> power = Matrix<F>::identity(n);
  while (kernels.back().size() < n) {
    power = power * x;
    kernels.push_back(kernel(power));
  }
  const std::size_t top = kernels.size() - 1;

  struct Chain {
    std::vector<F> head;
    std::size_t length;
  };
  std::vector<Chain> chains;
  for (std::size_t level = top; level >= 1; --level) {
    // vectors already spanning level modulo ker X^(level-1)
    std::vector<std::vector<F>> span = kernels[level - 1];
    for (const auto& c : chains) {
      std::vector<F> v = c.head;
      for (std::size_t s = 0; s < c.length - level; ++s) v = detail::apply(x, v);
      span.push_back(v);
    }
    std::size_t r = span.empty() ? 0 : rank(detail::columns_matrix(n, span));
    for (const auto& cand : kernels[level]) {
      span.push_back(cand);
      const std::size_t r2 = rank(detail::columns_matrix(n, span));
      if (r2 > r) {
        chains.push_back({cand, level});
        r = r2;
      } else {
        span.pop_back();
      }
    }
  }

  std::vector<std::vector<F>> basis;
  std::vector<F> weights;
  std::vector<std::pair<std::size_t, F>> lower;  // Y maps basis[k] to coeff * basis[k - 1]
  for (const auto& c : chains) {
    std::vector<F> v = c.head;
    const long len = static_cast<long>(c.length);
    for (long t = 0; t < len; ++t) {
      if (t) v = detail::apply(x, v);
      basis.push_back(v);
      weights.push_back(F(Rational(2 * t - len + 1)));
      lower.push_back({t ? 1u : 0u, F(Rational(t * (len - t)))});
    }
  }
  const Matrix<F> p = detail::columns_matrix(n, basis);
  const Matrix<F> pinv = inverse(p);
  Matrix<F> yc(n, n);
  for (std::size_t k = 0; k < n; ++k)
    if (lower[k].first) yc(k - 1, k) = lower[k].second;
  Sl2Triple<F> out{x, p * Matrix<F>::diagonal(weights) * pinv, p * yc * pinv};
  if (!is_sl2_triple(out)) throw Error("jacobson_morozov produced an invalid triple");
  return out;
}

/// X lies in g_alpha: its only nonzero entry is at alpha. Throws ZeroInput, or
/// NotInImage when X has entries off the root space.
template <OrderedField F>
F root_coefficient(const RootIndex& alpha, const Matrix<F>& x) {
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (!(i == alpha.i && j == alpha.j) && sign(x(i, j)) != 0)
        throw DomainError(DomainErrorKind::NotInImage, "matrix is not in the root space of alpha");
  if (alpha.i == alpha.j || sign(x(alpha.i, alpha.j)) == 0)
    throw DomainError(DomainErrorKind::ZeroInput, "root space vector must be nonzero");
  return x(alpha.i, alpha.j);
}

/// H_alpha in the diagonal subalgebra, defined by alpha(H) = B_theta(H_alpha, H).
template <OrderedField F>
Matrix<F> h_alpha(std::size_t n, const RootIndex& alpha) {
  std::vector<Matrix<F>> basis;
  for (std::size_t k = 0; k + 1 < n; ++k) basis.push_back(Matrix<F>::unit(n, k, k) - Matrix<F>::unit(n, k + 1, k + 1));
  Matrix<F> gram(n - 1, n - 1);
  std::vector<F> rhs;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    for (std::size_t l = 0; l + 1 < n; ++l) gram(k, l) = killing_theta(basis[k], basis[l]);
    rhs.push_back(basis[k](alpha.i, alpha.i) - basis[k](alpha.j, alpha.j));
  }
  const std::vector<F> c = solve(gram, rhs);
  Matrix<F> out(n, n);
  for (std::size_t k = 0; k + 1 < n; ++k) out += c[k] * basis[k];
  return out;
}

/// Y = -2 / (B_theta(X,X) alpha(H_alpha)) theta(X), H = [X,Y].
template <OrderedField F>
Sl2Triple<F> jm_basic_triple(const RootIndex& alpha, const Matrix<F>& x) {
  root_coefficient(alpha, x);
  const Matrix<F> ha = h_alpha<F>(x.rows(), alpha);
  const F alpha_ha = ha(alpha.i, alpha.i) - ha(alpha.j, alpha.j);
  const F scale = F(-2) * inverse(F(killing_theta(x, x) * alpha_ha), Truncation{});
  const Matrix<F> y = scale * theta(x);
  Sl2Triple<F> out{x, commutator(x, y), y};
  if (!is_sl2_triple(out)) throw Error("jm_basic_triple produced an invalid triple");
  return out;
}

/// phi: SL_2 -> SL_n placing a 2x2 matrix in rows and columns (alpha.i, alpha.j),
/// so that phi((1 t; 0 1)) = exp(t E_alpha).
template <OrderedField F>
Matrix<F> sl2_embed(std::size_t n, const RootIndex& alpha, const Matrix<F>& g) {
  if (g.rows() != 2 || g.cols() != 2) throw DomainError(DomainErrorKind::DimensionMismatch, "sl2_embed maps 2x2 matrices");
  if (alpha.i == alpha.j || alpha.i >= n || alpha.j >= n)
    throw DomainError(DomainErrorKind::DimensionMismatch, "alpha is not a root of sl_n");
  Matrix<F> out = Matrix<F>::identity(n);
  out(alpha.i, alpha.i) = g(0, 0);
  out(alpha.i, alpha.j) = g(0, 1);
  out(alpha.j, alpha.i) = g(1, 0);
  out(alpha.j, alpha.j) = g(1, 1);
  return out;
}

/// u = exp(t E_alpha) = I + t E_alpha with t != 0.
template <OrderedField F>
struct RootUnipotent {
  RootIndex alpha;
  F t;
};

/// Throws ZeroParameter for u = I and NotInUTheta when u is not in a single root group.
template <OrderedField F>
RootUnipotent<F> root_unipotent(const Matrix<F>& u) {
  if (!u.is_square()) throw DomainError(DomainErrorKind::DimensionMismatch, "group elements are square matrices");
  const Matrix<F> d = u - Matrix<F>::identity(u.rows());
  std::vector<RootIndex> support;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (sign(d(i, j)) != 0) support.push_back({i, j});
  if (support.empty()) throw DomainError(DomainErrorKind::ZeroParameter, "u = exp(tX) needs t != 0");
  if (support.size() != 1 || support[0].i == support[0].j)
    throw DomainError(DomainErrorKind::NotInUTheta, "element is not in a root group");
  return {support[0], d(support[0].i, support[0].j)};
}

/// m(u) = phi((0 t; -1/t 0)) for u = exp(t E_alpha).
template <OrderedField F>
Matrix<F> m_element(const Matrix<F>& u) {
  const auto [alpha, t] = root_unipotent(u);
  return sl2_embed(u.rows(), alpha, Matrix<F>::from_rows(std::vector<std::vector<F>>{{F(0), t}, {F(-inverse(t, Truncation{})), F(0)}}));
}

enum class Rank1Cell { Borel, Big };

/// g = b1 m b2 with b1, b2 in the image of the upper triangular subgroup and
/// m = phi((0 1; -1 0)); in the Borel cell m = I and b2 = I.
template <OrderedField F>
struct Rank1Bruhat {
  Rank1Cell cell;
  Matrix<F> b1, m, b2;
};

/// Throws NotInImage when g is not phi(h) for h in SL_2.
template <OrderedField F>
Rank1Bruhat<F> rank1_bruhat_certify(const Matrix<F>& g, const RootIndex& alpha) {
  if (!g.is_square() || alpha.i == alpha.j || alpha.i >= g.rows() || alpha.j >= g.rows())
    throw DomainError(DomainErrorKind::NotInImage, "alpha is not a root of this group");
  const std::size_t n = g.rows();
  const auto in_block = [&](std::size_t k) { return k == alpha.i || k == alpha.j; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (in_block(i) && in_block(j)) continue;
      if (sign(g(i, j) - F(i == j ? 1 : 0)) != 0)
        throw DomainError(DomainErrorKind::NotInImage, "matrix is not in the image of the root embedding");
    }
  const Matrix<F> h =
      Matrix<F>::from_rows({{g(alpha.i, alpha.i), g(alpha.i, alpha.j)}, {g(alpha.j, alpha.i), g(alpha.j, alpha.j)}});
  if (!in_sl(h)) throw DomainError(DomainErrorKind::NotInImage, "block does not have determinant 1");
  const Matrix<F> id = Matrix<F>::identity(n);
  if (sign(h(1, 0)) == 0) return {Rank1Cell::Borel, g, id, id};
  const auto r = bruhat(h);
  // the canonical 2x2 representative is (0 -1; 1 0) = -m
  const Matrix<F> m2 = Matrix<F>::from_rows({{F(0), F(1)}, {F(-1), F(0)}});
  Rank1Bruhat<F> out{Rank1Cell::Big, sl2_embed(n, alpha, Matrix<F>(-r.b1)), sl2_embed(n, alpha, m2),
                     sl2_embed(n, alpha, r.b2)};
  if (!(out.b1 * out.m * out.b2 - g).known_zero()) throw Error("rank one Bruhat witnesses do not reconstruct");
  return out;
}

}  // namespace rcg
