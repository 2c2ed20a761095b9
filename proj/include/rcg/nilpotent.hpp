#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "rcg/error.hpp"
#include "rcg/linalg.hpp"
#include "rcg/matrix.hpp"

namespace rcg {

/// The root e_i - e_j of sl_n (0-based indices); positive iff i < j.
struct RootIndex {
  std::size_t i = 0;
  std::size_t j = 0;

  bool positive() const { return i < j; }
  RootIndex negated() const { return {j, i}; }
  friend bool operator==(const RootIndex&, const RootIndex&) = default;
};

/// Total order on positive roots: (i,j) is larger than (i',j') when i < i',
/// or i = i' and j < j'. Brackets of a root with roots not above it land
/// strictly below it.
inline bool root_greater(const RootIndex& a, const RootIndex& b) {
  return a.i != b.i ? a.i < b.i : a.j < b.j;
}

struct RootLess {
  bool operator()(const RootIndex& a, const RootIndex& b) const { return a.i != b.i ? a.i < b.i : a.j < b.j; }
};

/// A set of positive roots closed under addition.
class ThetaSet {
 public:
  ThetaSet() = default;
  /// Throws NotClosed when the roots are not positive or not closed under addition.
  explicit ThetaSet(std::vector<RootIndex> roots);
  static ThetaSet all_positive(std::size_t n);

  const std::vector<RootIndex>& roots() const { return roots_; }
  bool contains(const RootIndex& r) const { return std::find(roots_.begin(), roots_.end(), r) != roots_.end(); }

 private:
  /// Sorted in decreasing root order.
  std::vector<RootIndex> roots_;
};

inline ThetaSet::ThetaSet(std::vector<RootIndex> roots) {
  for (const auto& r : roots)
    if (!r.positive()) throw DomainError(DomainErrorKind::NotClosed, "theta sets contain positive roots only");
  std::sort(roots.begin(), roots.end(), root_greater);
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  roots_ = std::move(roots);
  for (const auto& a : roots_)
    for (const auto& b : roots_)
      if (a.j == b.i && !contains({a.i, b.j}))
        throw DomainError(DomainErrorKind::NotClosed, "theta set is not closed under addition");
}

inline ThetaSet ThetaSet::all_positive(std::size_t n) {
  std::vector<RootIndex> r;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) r.push_back({i, j});
  return ThetaSet(std::move(r));
}

template <OrderedField F>
bool is_strictly_upper(const Matrix<F>& x) {
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j <= i && j < x.cols(); ++j)
      if (sign(x(i, j)) != 0) return false;
  return true;
}

template <OrderedField F>
bool is_nilpotent(const Matrix<F>& x) {
  if (!x.is_square()) return false;
  Matrix<F> p = x;
  for (std::size_t k = 1; k < x.rows(); ++k) p = p * x;
  for (const auto& e : p.data())
    if (sign(e) != 0) return false;
  return true;
}

/// Finite exponential sum; throws NotNilpotent.
template <OrderedField F>
Matrix<F> exp_nilpotent(const Matrix<F>& x) {
  if (!is_nilpotent(x)) throw DomainError(DomainErrorKind::NotNilpotent, "exp needs a nilpotent matrix");
  const std::size_t n = x.rows();
  Matrix<F> out = Matrix<F>::identity(n), power = Matrix<F>::identity(n);
  for (std::size_t k = 1; k < n; ++k) {
    power = F(Rational(1, static_cast<long>(k))) * (power * x);
    out += power;
  }
  return out;
}

/// Finite logarithm series; throws NotUnipotent.
template <OrderedField F>
Matrix<F> log_unipotent(const Matrix<F>& u) {
  if (!u.is_square()) throw DomainError(DomainErrorKind::NotUnipotent, "log needs a square matrix");
  const std::size_t n = u.rows();
  const Matrix<F> x = u - Matrix<F>::identity(n);
  if (!is_nilpotent(x)) throw DomainError(DomainErrorKind::NotUnipotent, "log needs a unipotent matrix");
  Matrix<F> out(n, n), power = Matrix<F>::identity(n);
  for (std::size_t k = 1; k < n; ++k) {
    power = power * x;
    const Rational c(k % 2 ? 1 : -1, static_cast<long>(k));
    out += F(c) * power;
  }
  return out;
}

/// Z with exp(Z) = exp(X) exp(Y), for strictly upper triangular X and Y.
template <OrderedField F>
Matrix<F> bch(const Matrix<F>& x, const Matrix<F>& y) {
  if (!is_strictly_upper(x) || !is_strictly_upper(y))
    throw DomainError(DomainErrorKind::NotNilpotent, "bch needs strictly upper triangular arguments");
  return log_unipotent(exp_nilpotent(x) * exp_nilpotent(y));
}

namespace detail {

/// One term of Dynkin's formula: coefficient times the right-nested bracket
/// of the word (letters 0 = X, 1 = Y).
struct DynkinTerm {
  Rational coeff;
  std::vector<int> word;
};

std::vector<DynkinTerm> dynkin_terms(std::size_t degree);

}  // namespace detail

/// Homogeneous degree-d part of the BCH series, by Dynkin's formula.
template <OrderedField F>
Matrix<F> bch_homogeneous(const Matrix<F>& x, const Matrix<F>& y, std::size_t degree) {
  Matrix<F> out(x.rows(), x.cols());
  for (const auto& t : detail::dynkin_terms(degree)) {
    Matrix<F> acc = t.word.back() ? y : x;
    for (std::size_t k = t.word.size() - 1; k-- > 0;) acc = commutator(t.word[k] ? y : x, acc);
    out += F(t.coeff) * acc;
  }
  return out;
}

/// Dynkin partial sum through the given degree.
template <OrderedField F>
Matrix<F> bch_series_terms(const Matrix<F>& x, const Matrix<F>& y, std::size_t degree) {
  Matrix<F> out(x.rows(), x.cols());
  for (std::size_t d = 1; d <= degree; ++d) out += bch_homogeneous(x, y, d);
  return out;
}

/// Lie elements Z_1 = X, Z_2 = Y, Z_3, ... with exp(X + Y) = prod exp(Z_k).
/// Z_3 = -[X,Y]/2 and every later Z_k is homogeneous of degree k - 1 in (X, Y).
template <OrderedField F>
std::vector<Matrix<F>> zassenhaus(const Matrix<F>& x, const Matrix<F>& y) {
  if (!is_strictly_upper(x) || !is_strictly_upper(y))
    throw DomainError(DomainErrorKind::NotNilpotent, "zassenhaus needs strictly upper triangular arguments");
  const std::size_t n = x.rows();
  std::vector<Matrix<F>> factors{x, y};
  if (n < 3) {
    for (std::size_t d = 2; d < n; ++d) factors.push_back(Matrix<F>(n, n));
    return factors;
  }
  // residual(s) = exp(-sY) exp(-sX) exp(s(X+Y)) for s = 1..n-1; its log is a
  // polynomial in s without constant term and of degree < n
  const std::size_t samples = n - 1;
  std::vector<Matrix<F>> residual;
  for (std::size_t s = 1; s <= samples; ++s) {
    const F sf(Rational(static_cast<long>(s)));
    residual.push_back(exp_nilpotent(F(-sf) * y) * exp_nilpotent(F(-sf) * x) * exp_nilpotent(sf * (x + y)));
  }
  // Vandermonde V[s-1][k-1] = s^k
  TowerMatrix v(samples, samples);
  for (std::size_t s = 1; s <= samples; ++s) {
    Rational p = 1;
    for (std::size_t k = 1; k <= samples; ++k) {
      p *= static_cast<long>(s);
      v(s - 1, k - 1) = TowerScalar(p);
    }
  }
  const TowerMatrix vinv = inverse(v);
  for (std::size_t degree = 2; degree <= samples; ++degree) {
    std::vector<Matrix<F>> logs;
    for (const auto& r : residual) logs.push_back(log_unipotent(r));
    Matrix<F> c(n, n);
    for (std::size_t s = 0; s < samples; ++s) c += F(vinv(degree - 1, s).rational_value()) * logs[s];
    factors.push_back(c);
    for (std::size_t s = 1; s <= samples; ++s) {
      Rational p = 1;
      for (std::size_t k = 0; k < degree; ++k) p *= static_cast<long>(s);
      residual[s - 1] = exp_nilpotent(F(-p) * c) * residual[s - 1];
    }
  }
  for (const auto& r : residual)
    if (!(r - Matrix<F>::identity(n)).known_zero()) throw Error("zassenhaus residual did not reduce to the identity");
  return factors;
}

/// Factor of u along one root: exp(coefficient * E_ij).
template <OrderedField F>
struct RootFactor {
  RootIndex root;
  F coefficient;
  Matrix<F> factor;
};

/// u = prod_k exp(c_k E_{alpha_k}) over theta's roots in decreasing order.
/// Throws NotInUTheta when log(u) leaves the span of theta's root spaces.
template <OrderedField F>
std::vector<RootFactor<F>> u_theta_factorize(const Matrix<F>& u, const ThetaSet& theta) {
  const std::size_t n = u.rows();
  Matrix<F> x;
  try {
    x = log_unipotent(u);
  } catch (const DomainError&) {
    throw DomainError(DomainErrorKind::NotInUTheta, "element is not unipotent");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sign(x(i, j)) != 0 && !(i < j && theta.contains({i, j})))
        throw DomainError(DomainErrorKind::NotInUTheta, "logarithm has a component outside theta");
  std::vector<RootFactor<F>> out;
  Matrix<F> rest = u;
  for (const auto& r : theta.roots()) {
    const F c = log_unipotent(rest)(r.i, r.j);
    Matrix<F> e(n, n);
    e(r.i, r.j) = c;
    Matrix<F> f = exp_nilpotent(e);
    e(r.i, r.j) = -c;
    rest = exp_nilpotent(e) * rest;
    out.push_back({r, c, std::move(f)});
  }
  if (!(rest - Matrix<F>::identity(n)).known_zero()) throw Error("root factorization left a nontrivial residual");
  return out;
}

/// u = u' u'' with u' a product of root factors over theta inside psi and u''
/// over theta outside psi. Factors are listed in multiplication order.
template <OrderedField F>
struct PsiSplit {
  std::vector<RootFactor<F>> first;
  std::vector<RootFactor<F>> second;
  Matrix<F> first_product;
  Matrix<F> second_product;
};

/// Peels the largest root of theta; a factor outside psi is moved past the
/// remainder by conjugation, which keeps the remainder in U over the smaller set.
template <OrderedField F>
PsiSplit<F> psi_split(const Matrix<F>& u, const ThetaSet& theta, const std::vector<RootIndex>& psi) {
  const std::size_t n = u.rows();
  const auto in_psi = [&](const RootIndex& r) { return std::find(psi.begin(), psi.end(), r) != psi.end(); };
  PsiSplit<F> out{{}, {}, Matrix<F>::identity(n), Matrix<F>::identity(n)};
  std::vector<RootFactor<F>> tail;
  Matrix<F> rest = u;
  std::vector<RootIndex> remaining = theta.roots();
  while (!remaining.empty()) {
    const RootIndex top = remaining.front();
    const ThetaSet current(remaining);
    const auto factors = u_theta_factorize(rest, current);
    const RootFactor<F>& f = factors.front();
    Matrix<F> inv = f.factor;
    inv(top.i, top.j) = -inv(top.i, top.j);
    if (in_psi(top)) {
      out.first.push_back(f);
      rest = inv * rest;
    } else {
      // rest = f * bar = (f bar f^-1) f
      tail.push_back(f);
      rest = rest * inv;
    }
    remaining.erase(remaining.begin());
  }
  if (!(rest - Matrix<F>::identity(n)).known_zero()) throw Error("psi split left a nontrivial residual");
  // factors outside psi were peeled from the right, so they multiply in reverse
  out.second.assign(tail.rbegin(), tail.rend());
  for (const auto& f : out.first) out.first_product = out.first_product * f.factor;
  for (const auto& f : out.second) out.second_product = out.second_product * f.factor;
  return out;
}

}  // namespace rcg
