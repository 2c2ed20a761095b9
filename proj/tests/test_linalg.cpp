#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "rcg/eigen.hpp"
#include "rcg/error.hpp"
#include "rcg/linalg.hpp"
#include "test_util.hpp"

using namespace rcg;
using rcg::testing::random_rational;
using rcg::testing::uniform_int;

namespace {

TowerMatrix rat(std::size_t r, std::size_t c, std::vector<long> v) {
  std::vector<Rational> q(v.begin(), v.end());
  return from_rational<TowerScalar>(r, c, q);
}

TowerMatrix random_matrix(std::size_t n, long bound) {
  TowerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = TowerScalar(random_rational(bound));
  return m;
}

/// Leibniz expansion over all permutations.
TowerScalar leibniz_det(const TowerMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  TowerScalar total;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += p[i] > p[j];
    TowerScalar prod(inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < n; ++i) prod *= m(i, p[i]);
    total += prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

PuiseuxScalar X(const Rational& e = 1) { return PuiseuxScalar::monomial(TowerScalar(1), e); }

}  // namespace

TEST_CASE("determinants") {
  CHECK(det(TowerMatrix::identity(3)) == TowerScalar(1));
  CHECK(det(rat(2, 2, {0, -1, 1, 0})) == TowerScalar(1));
  CHECK(rank(rat(2, 2, {1, 2, 2, 4})) == 1);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(1, 4));
    const TowerMatrix a = random_matrix(n, 9), b = random_matrix(n, 9);
    CHECK(det(a) == leibniz_det(a));
    CHECK(det(a * b) == det(a) * det(b));
  }
}

TEST_CASE("characteristic polynomial") {
  const auto c = char_poly(TowerMatrix::diagonal({TowerScalar(2), TowerScalar(Rational(1, 2))}));
  CHECK(c == std::vector<TowerScalar>{TowerScalar(1), TowerScalar(Rational(-5, 2)), TowerScalar(1)});
  CHECK(char_poly(TowerMatrix(2, 2)) == std::vector<TowerScalar>{TowerScalar(0), TowerScalar(0), TowerScalar(1)});
  CHECK(char_poly(rat(2, 2, {2, 1, 1, 1})) == std::vector<TowerScalar>{TowerScalar(1), TowerScalar(-3), TowerScalar(1)});
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(1, 4));
    const TowerMatrix m = random_matrix(n, 9);
    const auto p = char_poly(m);
    CHECK(p[n - 1] == -m.trace());
    CHECK(p[0] == (n % 2 ? -leibniz_det(m) : leibniz_det(m)));
  }
}

TEST_CASE("solve, inverse and kernel") {
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(1, 4));
    const TowerMatrix m = random_matrix(n, 9);
    const TowerMatrix b = random_matrix(n, 9);
    if (det(m).is_zero()) {
      CHECK_THROWS_AS(solve(m, b), DomainError);
      continue;
    }
    CHECK(m * solve(m, b) == b);
    CHECK(m * inverse(m) == TowerMatrix::identity(n));
  }
  const TowerMatrix s = rat(3, 3, {1, 2, 3, 2, 4, 6, 1, 0, 1});
  CHECK(rank(s) == 2);
  const auto ker = kernel(s);
  REQUIRE(ker.size() == 1);
  CHECK((s * TowerMatrix(3, 1, ker.front())).known_zero());
  CHECK_THROWS_AS(solve(s, TowerMatrix::identity(3)), DomainError);
}

TEST_CASE("linear algebra over Puiseux entries") {
  const PuiseuxMatrix m = PuiseuxMatrix::from_rows({{X(), PuiseuxScalar(1)}, {PuiseuxScalar(0), X(-1)}});
  CHECK(det(m) == PuiseuxScalar(1));
  const PuiseuxMatrix inv = inverse(m);
  CHECK(m * inv == PuiseuxMatrix::identity(2));
  // a truncated pivot that cancels cannot be used
  const PuiseuxMatrix bad = PuiseuxMatrix::from_rows({{PuiseuxScalar::big_o(-2), PuiseuxScalar(1)}, {PuiseuxScalar(1), PuiseuxScalar(0)}});
  CHECK_THROWS_AS(rank(bad), IndeterminateSign);
}

TEST_CASE("tower roots") {
  const auto r = tower_roots({TowerScalar(-6), TowerScalar(11), TowerScalar(-6), TowerScalar(1)});
  std::vector<TowerScalar> sorted = r;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<TowerScalar>{TowerScalar(1), TowerScalar(2), TowerScalar(3)});
  const auto q = tower_roots({TowerScalar(-2), TowerScalar(0), TowerScalar(1)});
  CHECK(q.size() == 2);
  for (const auto& x : q) CHECK(x * x == TowerScalar(2));
  // x^3 - 2 has no rational root
  CHECK_THROWS_AS(tower_roots({TowerScalar(-2), TowerScalar(0), TowerScalar(0), TowerScalar(1)}), DomainError);
}

TEST_CASE("symmetric eigenproblem over the tower field") {
  const auto d = sym_eigen_tower(TowerMatrix::diagonal({TowerScalar(4), TowerScalar(1)}));
  CHECK(d.values == std::vector<TowerScalar>{TowerScalar(4), TowerScalar(1)});
  CHECK(d.vectors == TowerMatrix::identity(2));

  const TowerMatrix s = rat(2, 2, {2, 1, 1, 1});
  const auto e = sym_eigen_tower(s);
  const TowerScalar r5 = sqrt_positive(TowerScalar(5));
  CHECK(e.values[0] == (TowerScalar(3) + r5) / TowerScalar(2));
  CHECK(e.values[1] == (TowerScalar(3) - r5) / TowerScalar(2));
  CHECK(s * e.vectors == e.vectors * TowerMatrix::diagonal(e.values));
  CHECK(e.vectors.transpose() * e.vectors == TowerMatrix::identity(2));
  CHECK(det(e.vectors) == TowerScalar(1));

  try {
    sym_eigen_tower(TowerMatrix::identity(2));
    FAIL("expected a repeated-eigenvalue error");
  } catch (const DomainError& err) {
    CHECK(err.kind() == DomainErrorKind::RepeatedEigenvalue);
  }

  // symmetric 3x3 with integer spectrum built as Q D Q^T for a rational orthogonal Q
  const TowerMatrix q = from_rational<TowerScalar>(
      3, 3, {Rational(1, 3), Rational(2, 3), Rational(2, 3), Rational(2, 3), Rational(1, 3), Rational(-2, 3),
             Rational(2, 3), Rational(-2, 3), Rational(1, 3)});
  const TowerMatrix s3 = q * TowerMatrix::diagonal({TowerScalar(5), TowerScalar(-1), TowerScalar(2)}) * q.transpose();
  const auto e3 = sym_eigen_tower(s3);
  CHECK(e3.values == std::vector<TowerScalar>{TowerScalar(5), TowerScalar(2), TowerScalar(-1)});
  CHECK(s3 * e3.vectors == e3.vectors * TowerMatrix::diagonal(e3.values));
  CHECK(e3.vectors.transpose() * e3.vectors == TowerMatrix::identity(3));
  CHECK(det(e3.vectors) == TowerScalar(1));
}

TEST_CASE("symmetric eigen-lifting over Puiseux entries") {
  const PuiseuxScalar one(1);
  {
    const auto e = sym_eigen_lift(PuiseuxMatrix::diagonal({X(2), one}), 4);
    CHECK((e.eigenvalues[0] - X(2)).known_zero());
    CHECK(e.eigenvalues[1].truncated(-4) == one.truncated(-4));
  }
  const PuiseuxMatrix s = PuiseuxMatrix::from_rows({{X(2), one}, {one, one}});
  const auto e = sym_eigen_lift(s, 6);
  CHECK(e.certified_order >= 6);
  const PuiseuxScalar l1 = e.eigenvalues[0], l2 = e.eigenvalues[1];
  // l1 = X^2 + X^-2 + ..., l2 = 1 - X^-2 - ...
  CHECK(l1.terms()[0].exponent == 2);
  CHECK(l1.terms()[1].exponent == -2);
  CHECK(l2.terms()[0].exponent == 0);
  CHECK(l2.terms()[1].exponent == -2);
  CHECK(l2.terms()[1].coeff == TowerScalar(-1));
  CHECK(vanishes_through(l1 + l2 - s.trace(), Rational(2) - 6));
  CHECK(vanishes_through(l1 * l2 - det(s), Rational(2) - 6));
  const PuiseuxMatrix v = e.eigenvectors;
  for (std::size_t i = 0; i < 2; ++i) {
    const PuiseuxMatrix col(2, 1, v.column(i));
    const PuiseuxMatrix res = s * col - e.eigenvalues[i] * col;
    for (const auto& x : res.data()) CHECK(vanishes_through(x, Rational(2) - 6));
  }
  const PuiseuxMatrix gram = v.transpose() * v - PuiseuxMatrix::identity(2);
  for (const auto& x : gram.data()) CHECK(vanishes_through(x, -6));

  const PuiseuxMatrix degenerate = PuiseuxMatrix::from_rows({{X(), X()}, {X(), X()}});
  try {
    sym_eigen_lift(degenerate, 4);
    FAIL("expected a degenerate-spectrum error");
  } catch (const DomainError& err) {
    CHECK(err.kind() == DomainErrorKind::DegenerateLeadingSpectrum);
  }
}

TEST_CASE("eigen-lifting agrees with the exact spectrum at large X") {
  const Rational T(1000);
  for (int trial = 0; trial < 20; ++trial) {
    const long p = uniform_int(1, 3);
    const Rational b = random_rational(5), c = random_rational(5);
    const PuiseuxMatrix g = PuiseuxMatrix::from_rows(
        {{X(p), PuiseuxScalar(b)}, {PuiseuxScalar(c), PuiseuxScalar(1 + b * c) * X(-p)}});
    const PuiseuxMatrix s = g.transpose() * g;
    const auto lift = sym_eigen_lift(s, 4);
    const TowerMatrix at_t = s.map([&](const PuiseuxScalar& x) { return specialize(x, T); });
    const auto exact = sym_eigen_tower(at_t);
    for (std::size_t i = 0; i < 2; ++i) {
      const Rational tail = *lift.eigenvalues[i].tail();
      const Interval approx = specialize_approx(lift.eigenvalues[i], T, Rational(1, Integer("1" + std::string(80, '0'))));
      const Interval truth = exact.values[i].approx(Rational(1, Integer("1" + std::string(80, '0'))));
      const Rational gap = std::max(Rational(approx.hi - truth.lo), Rational(truth.hi - approx.lo));
      // omitted terms are O(T^tail); allow a factor T for their coefficients
      const double bound = std::pow(T.get_d(), tail.get_d() + 1);
      CHECK(gap.get_d() <= bound);
    }
  }
}
