#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "rcg/eigen.hpp"
#include "rcg/error.hpp"
#include "rcg/linalg.hpp"
#include "rcg/slgroup.hpp"

namespace rcg {

template <OrderedField F>
struct KAUResult {
  Matrix<F> k, a, u;
};

template <OrderedField F>
struct UAKResult {
  Matrix<F> u, a, k;
};

template <OrderedField F>
struct KAKResult {
  Matrix<F> k1, a, k2;
  /// Relative order through which the Puiseux result is certified; empty when exact.
  std::optional<Rational> certified_order;
};

template <OrderedField F>
struct BruhatResult {
  Matrix<F> b1, w, b2;
};

template <OrderedField F>
void require_sl(const Matrix<F>& g) {
  if (!g.is_square()) throw DomainError(DomainErrorKind::DimensionMismatch, "group elements are square matrices");
  if (!in_sl(g)) throw DomainError(DomainErrorKind::NotInGroup, "matrix does not have determinant 1");
}

/// g = k a u by Gram-Schmidt on the columns of g. The orthogonal vectors are
/// kept unnormalized, so only the final scaling needs square roots.
template <OrderedField F>
KAUResult<F> iwasawa_kau(const Matrix<F>& g, const Truncation& trunc = {}) {
  require_sl(g);
  const std::size_t n = g.rows();
  std::vector<std::vector<F>> v;
  std::vector<F> s, s_inv;
  Matrix<F> u = Matrix<F>::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::vector<F> c = g.column(j);
    std::vector<F> w = c;
    for (std::size_t i = 0; i < j; ++i) {
      u(i, j) = dot(v[i], c) * s_inv[i];
      for (std::size_t r = 0; r < n; ++r) w[r] -= u(i, j) * v[i][r];
    }
    s.push_back(dot(w, w));
    s_inv.push_back(inverse(s.back(), trunc));
    v.push_back(std::move(w));
  }
  Matrix<F> k(n, n), a(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const F root = sqrt_positive(s[j], trunc);
    const F root_inv = inverse(root, trunc);
    a(j, j) = root;
    for (std::size_t r = 0; r < n; ++r) k(r, j) = v[j][r] * root_inv;
  }
  return {std::move(k), std::move(a), std::move(u)};
}

/// Antidiagonal permutation J (J = J^T = J^-1).
template <OrderedField F>
Matrix<F> flip(std::size_t n) {
  Matrix<F> j(n, n);
  for (std::size_t i = 0; i < n; ++i) j(i, n - 1 - i) = F(Rational(1));
  return j;
}

/// g = u a k, from the KAU decomposition of J g^T J.
template <OrderedField F>
UAKResult<F> iwasawa_uak(const Matrix<F>& g, const Truncation& trunc = {}) {
  const std::size_t n = g.rows();
  const Matrix<F> j = flip<F>(n);
  const KAUResult<F> h = iwasawa_kau(Matrix<F>(j * g.transpose() * j), trunc);
  return {j * h.u.transpose() * j, j * h.a * j, j * h.k.transpose() * j};
}

template <OrderedField F>
Matrix<F> a_component(const Matrix<F>& g, const Truncation& trunc = {}) {
  return iwasawa_uak(g, trunc).a;
}

/// Exact Cartan decomposition over the tower field: a = sqrt(spectrum of g^T g) in
/// decreasing order, k2 = V^T, k1 = g V a^-1.
KAKResult<TowerScalar> cartan_kak(const TowerMatrix& g);

/// Cartan decomposition over the Puiseux field, certified through `order`
/// relative orders (the lift order is raised adaptively).
KAKResult<PuiseuxScalar> cartan_kak(const PuiseuxMatrix& g, const Rational& order);

/// Relative order through which every entry of m vanishes, measured against
/// `scale`: -1 when a known term survives, 1000000 when m is exactly zero.
Rational vanishing_order(const PuiseuxMatrix& m, const Rational& scale);

/// Largest leading exponent among the entries; 0 when none is known.
Rational max_lead(const PuiseuxMatrix& m);

/// Smallest relative order through which k1 a k2 = g, k_i k_i^T = I and
/// det k_i = 1 are known to hold; a must be positive, diagonal and decreasing.
Rational kak_certified_order(const PuiseuxMatrix& g, const KAKResult<PuiseuxScalar>& r);

/// Canonical representative of a permutation in N: the permutation matrix,
/// with the entry in the first moved row negated when its determinant is -1.
template <OrderedField F>
Matrix<F> weyl_representative(const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  Matrix<F> w(n, n);
  for (std::size_t i = 0; i < n; ++i) w(i, perm[i]) = F(Rational(1));
  int inversions = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
  if (inversions % 2) {
    for (std::size_t i = 0; i < n; ++i) {
      if (perm[i] != i) {
        w(i, perm[i]) = F(Rational(-1));
        break;
      }
    }
  }
  return w;
}

/// g = b1 w b2 with b1, b2 upper triangular and w the canonical representative
/// of the Bruhat cell.
///
/// Rows are processed from the bottom: the leftmost nonzero entry of each row
/// becomes a pivot, the rest of its row is cleared by column operations and
/// the rest of its column above by row operations.
template <OrderedField F>
BruhatResult<F> bruhat(const Matrix<F>& g, const Truncation& trunc = {}) {
  require_sl(g);
  const std::size_t n = g.rows();
  Matrix<F> m = g;
  Matrix<F> left_inv = Matrix<F>::identity(n);   // accumulated row operations, inverted
  Matrix<F> right_inv = Matrix<F>::identity(n);  // accumulated column operations, inverted
  std::vector<std::size_t> perm(n);
  std::vector<bool> used(n, false);
  for (std::size_t i = n; i-- > 0;) {
    std::optional<std::size_t> c;
    for (std::size_t j = 0; j < n; ++j) {
      if (!used[j] && sign(m(i, j)) != 0) {
        c = j;
        break;
      }
    }
    if (!c) throw DomainError(DomainErrorKind::SingularMatrix, "matrix is singular");
    used[*c] = true;
    perm[i] = *c;
    const F inv = inverse(m(i, *c), trunc);
    for (std::size_t k = *c + 1; k < n; ++k) {
      if (known_zero(m(i, k)) && is_exact(m(i, k))) continue;
      // col_k -= t col_c, i.e. right multiplication by I - t E_ck
      const F t = m(i, k) * inv;
      for (std::size_t r = 0; r < n; ++r) m(r, k) -= t * m(r, *c);
      m(i, k) = F(Rational(0));
      for (std::size_t r = 0; r < n; ++r) right_inv(*c, r) += t * right_inv(k, r);
    }
    for (std::size_t r = 0; r < i; ++r) {
      if (known_zero(m(r, *c)) && is_exact(m(r, *c))) continue;
      // row_r -= t row_i, i.e. left multiplication by I - t E_ri
      const F t = m(r, *c) * inv;
      for (std::size_t k = 0; k < n; ++k) m(r, k) -= t * m(i, k);
      m(r, *c) = F(Rational(0));
      for (std::size_t q = 0; q < n; ++q) left_inv(q, i) += t * left_inv(q, r);
    }
  }
  // m is now monomial with the pattern of perm
  Matrix<F> w = weyl_representative<F>(perm);
  // b2 = w^T m right_inv, with w^T m diagonal
  Matrix<F> d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(perm[i], perm[i]) = w(i, perm[i]) * m(i, perm[i]);
  return {std::move(left_inv), std::move(w), d * right_inv};
}

/// Cell invariant: r(i, j) = rank of the lower-left block g[i..n-1, 0..j].
template <OrderedField F>
std::vector<std::vector<std::size_t>> bruhat_rank_matrix(const Matrix<F>& g, const Truncation& trunc = {}) {
  const std::size_t n = g.rows();
  std::vector<std::vector<std::size_t>> r(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Matrix<F> block(n - i, j + 1);
      for (std::size_t a = i; a < n; ++a)
        for (std::size_t b = 0; b <= j; ++b) block(a - i, b) = g(a, b);
      r[i][j] = rank(block, trunc);
    }
  }
  return r;
}

/// Permutation read off the rank matrix: row i hits column j where the rank
/// of the lower-left blocks jumps.
std::vector<std::size_t> permutation_from_ranks(const std::vector<std::vector<std::size_t>>& r);

/// Signed permutation n (canonical representative) with a2 = n a1 n^-1, or
/// the identity when both are in the chamber and equal. Throws NoRelatingElement.
template <OrderedField F>
Matrix<F> kak_uniqueness_check(const Matrix<F>& a1, const Matrix<F>& a2) {
  const std::size_t n = a1.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    const Matrix<F> w = weyl_representative<F>(perm);
    if ((w * a1 * w.transpose() - a2).known_zero()) return w;
  } while (std::next_permutation(perm.begin(), perm.end()));
  throw DomainError(DomainErrorKind::NoRelatingElement, "no Weyl group element relates the two A-components");
}

}  // namespace rcg
