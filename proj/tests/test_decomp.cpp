#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "rcg/decomp.hpp"
#include "rcg/error.hpp"
#include "test_util.hpp"

using namespace rcg;
using namespace rcg::testing;

namespace {

TowerMatrix rat(std::size_t n, std::vector<Rational> v) { return from_rational<TowerScalar>(n, n, v); }

TowerScalar T(const Rational& q) { return TowerScalar(q); }

PuiseuxScalar X(const Rational& e = 1) { return PuiseuxScalar::monomial(TowerScalar(1), e); }

/// Singular values of a real 2x2 matrix from the closed form.
std::pair<double, double> svd2(double a, double b, double c, double d) {
  const double s1 = a * a + b * b + c * c + d * d;
  const double det = a * d - b * c;
  const double disc = std::sqrt(std::max(0.0, s1 * s1 - 4 * det * det));
  const double big = std::sqrt((s1 + disc) / 2);
  return {big, std::abs(det) / big};
}

/// Random SL_2 over the Puiseux field: g = [[alpha X^p, b], [c, (1 + bc) / (alpha X^p)]].
PuiseuxMatrix random_puiseux_sl2() {
  const Rational p = make_rational(uniform_int(2, 4), 2);
  const Rational alpha = make_rational(uniform_int(1, 9), uniform_int(1, 9));
  const PuiseuxScalar b = PuiseuxScalar::monomial(TowerScalar(random_rational(9)), make_rational(uniform_int(-1, 1), 2));
  const PuiseuxScalar c = PuiseuxScalar::monomial(TowerScalar(random_rational(9)), make_rational(uniform_int(-1, 1), 2));
  const PuiseuxScalar a = PuiseuxScalar::monomial(TowerScalar(alpha), p);
  const PuiseuxScalar d = (PuiseuxScalar(1) + b * c) * PuiseuxScalar::monomial(TowerScalar(1 / alpha), -p);
  return PuiseuxMatrix::from_rows({{a, b}, {c, d}});
}

}  // namespace

TEST_CASE("Iwasawa KAU examples") {
  const TowerMatrix id = TowerMatrix::identity(2);
  const auto r0 = iwasawa_kau(id);
  CHECK(r0.k == id);
  CHECK(r0.a == id);
  CHECK(r0.u == id);
  const TowerMatrix g = rat(2, {1, 1, 0, 1});
  const auto r1 = iwasawa_kau(g);
  CHECK(r1.k == id);
  CHECK(r1.a == id);
  CHECK(r1.u == g);
  const auto r2 = iwasawa_kau(rat(2, {1, 0, 1, 1}));
  const TowerScalar s2 = sqrt_positive(T(2));
  const TowerScalar h = s2.inverse();
  CHECK(r2.k == TowerMatrix::from_rows({{h, -h}, {h, h}}));
  CHECK(r2.a == TowerMatrix::diagonal({s2, h}));
  CHECK(r2.u == rat(2, {1, Rational(1, 2), 0, 1}));
  CHECK_THROWS_AS(iwasawa_kau(rat(2, {2, 0, 0, 1})), DomainError);
}

TEST_CASE("Iwasawa decompositions reconstruct and are unique") {
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(2, 3));
    const TowerMatrix g = random_sl(n, 20);
    const auto r = iwasawa_kau(g);
    CHECK(r.k * r.a * r.u == g);
    CHECK(member_K(r.k));
    CHECK(member_A(r.a));
    CHECK(member_U(r.u));
    const auto s = iwasawa_uak(g);
    CHECK(s.u * s.a * s.k == g);
    CHECK(member_K(s.k));
    CHECK(member_A(s.a));
    CHECK(member_U(s.u));
    CHECK(a_component(g) == s.a);

    // a product of known factors decomposes back into exactly those factors
    const TowerMatrix k = random_K(n, 5), a = random_A(n, 9), u = random_U(n, 9);
    const auto back = iwasawa_kau(TowerMatrix(k * a * u));
    CHECK(back.k == k);
    CHECK(back.a == a);
    CHECK(back.u == u);
    const auto back2 = iwasawa_uak(TowerMatrix(u * a * k));
    CHECK(back2.u == u);
    CHECK(back2.a == a);
    CHECK(back2.k == k);
    CHECK(a_component(TowerMatrix(a * k)) == a);
  }
  CHECK(a_component(random_K(3, 5)) == TowerMatrix::identity(3));
  const TowerMatrix a = random_A(3, 9);
  const auto r = iwasawa_uak(a);
  CHECK(r.u == TowerMatrix::identity(3));
  CHECK(r.a == a);
  CHECK(r.k == TowerMatrix::identity(3));
}

TEST_CASE("Cartan KAK over the tower field") {
  const TowerMatrix d = TowerMatrix::diagonal({T(3), T(Rational(1, 3))});
  const auto rd = cartan_kak(d);
  CHECK(rd.k1 == TowerMatrix::identity(2));
  CHECK(rd.a == d);
  CHECK(rd.k2 == TowerMatrix::identity(2));

  const auto r = cartan_kak(rat(2, {1, 1, 0, 1}));
  const TowerScalar s5 = sqrt_positive(T(5));
  CHECK(r.a == TowerMatrix::diagonal({(T(1) + s5) / T(2), (s5 - T(1)) / T(2)}));
  CHECK(r.k1 * r.a * r.k2 == rat(2, {1, 1, 0, 1}));
  CHECK(member_K(r.k1));
  CHECK(member_K(r.k2));

  for (int trial = 0; trial < 30; ++trial) {
    const TowerMatrix g = random_sl(2, 20);
    KAKResult<TowerScalar> res;
    try {
      res = cartan_kak(g);
    } catch (const DomainError& e) {
      CHECK(e.kind() == DomainErrorKind::RepeatedEigenvalue);
      CHECK(member_K(g));
      continue;
    }
    CHECK(res.k1 * res.a * res.k2 == g);
    CHECK(member_K(res.k1));
    CHECK(member_K(res.k2));
    CHECK(member_A(res.a));
    CHECK(res.a(0, 0) > res.a(1, 1));
  }
  try {
    cartan_kak(random_K(2, 5));
    FAIL("orthogonal matrices have repeated singular values");
  } catch (const DomainError& e) {
    CHECK(e.kind() == DomainErrorKind::RepeatedEigenvalue);
  }
  // 3x3 with rational singular values
  const TowerMatrix k1 = random_K(3, 5), k2 = random_K(3, 5);
  const TowerMatrix a = TowerMatrix::diagonal({T(4), T(Rational(1, 2)), T(Rational(1, 2))});
  (void)a;
  const TowerMatrix a3 = TowerMatrix::diagonal({T(5), T(1), T(Rational(1, 5))});
  const auto r3 = cartan_kak(TowerMatrix(k1 * a3 * k2));
  CHECK(r3.a == a3);
  CHECK(r3.k1 * r3.a * r3.k2 == k1 * a3 * k2);
}

TEST_CASE("KAK uniqueness relation") {
  const TowerMatrix a = TowerMatrix::diagonal({T(5), T(1), T(Rational(1, 5))});
  CHECK(kak_uniqueness_check(a, a) == TowerMatrix::identity(3));
  for (const auto& w : weyl_reps_sl3()) {
    const TowerMatrix b = w * a * w.transpose();
    const TowerMatrix n = kak_uniqueness_check(a, b);
    CHECK(member_N(n));
    CHECK(n * a * n.transpose() == b);
  }
  CHECK_THROWS_AS(kak_uniqueness_check(a, TowerMatrix::diagonal({T(2), T(1), T(Rational(1, 2))})), DomainError);
}

TEST_CASE("Cartan KAK over the Puiseux field") {
  const PuiseuxMatrix g = PuiseuxMatrix::from_rows({{X(), PuiseuxScalar(0)}, {PuiseuxScalar(1), X(-1)}});
  const auto r = cartan_kak(g, 6);
  REQUIRE(r.certified_order);
  CHECK(*r.certified_order >= 6);
  CHECK(*r.a(0, 0).lead_exponent() == 1);
  CHECK(*r.a(1, 1).lead_exponent() == -1);
  // numeric singular values at X = 10, 100, 1000
  for (double t : {10.0, 100.0, 1000.0}) {
    const auto [s1, s2] = svd2(t, 0, 1, 1 / t);
    const Interval a1 = specialize_approx(r.a(0, 0), Rational(t), Rational(1, 1000000000000000L));
    const Interval a2 = specialize_approx(r.a(1, 1), Rational(t), Rational(1, 1000000000000000L));
    CHECK(std::abs(a1.lo.get_d() - s1) <= 1e-9 * s1 + std::pow(t, -5.0));
    CHECK(std::abs(a2.lo.get_d() - s2) <= 1e-9 * s2 + std::pow(t, -7.0));
  }
  for (int trial = 0; trial < 10; ++trial) {
    const PuiseuxMatrix h = random_puiseux_sl2();
    const auto res = cartan_kak(h, 6);
    CHECK(kak_certified_order(h, res) >= 6);
  }
}

TEST_CASE("Bruhat decomposition examples") {
  const TowerMatrix up = rat(2, {2, 3, 0, Rational(1, 2)});
  const auto r0 = bruhat(up);
  CHECK(r0.w == TowerMatrix::identity(2));
  CHECK(r0.b1 * r0.w * r0.b2 == up);
  const auto r1 = bruhat(rat(2, {1, 0, 1, 1}));
  CHECK(r1.w == rat(2, {0, -1, 1, 0}));
  CHECK(r1.b1 == rat(2, {1, 1, 0, 1}));
  CHECK(r1.b2 == rat(2, {1, 1, 0, 1}));
  const TowerMatrix anti = rat(3, {0, 0, -1, 0, 1, 0, 1, 0, 0});
  const auto r2 = bruhat(anti);
  CHECK(r2.w == anti);
  CHECK(r2.b1 == TowerMatrix::identity(3));
  CHECK(r2.b2 == TowerMatrix::identity(3));
}

TEST_CASE("Bruhat decomposition reconstructs and respects cells") {
  const auto reps = weyl_reps_sl3();
  for (const auto& w : reps) {
    const auto perm = permutation_pattern(w);
    CHECK(weyl_representative<TowerScalar>(perm) == w);
    CHECK(permutation_from_ranks(bruhat_rank_matrix(w)) == perm);
  }
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(2, 4));
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng());
    const TowerMatrix g = n < 4 ? random_sl(n, 20)
                                : random_A(n, 9) * random_U(n, 9) * weyl_representative<TowerScalar>(perm) * random_U(n, 9).transpose();
    const auto r = bruhat(g);
    CHECK(r.b1 * r.w * r.b2 == g);
    CHECK(member_B(r.b1));
    CHECK(member_B(r.b2));
    CHECK(member_N(r.w));
    CHECK(permutation_from_ranks(bruhat_rank_matrix(g)) == permutation_pattern(r.w));

    const TowerMatrix& w = reps[static_cast<std::size_t>(uniform_int(0, 5))];
    const TowerMatrix b1 = random_A(3, 9) * random_U(3, 9), b2 = random_U(3, 9) * random_A(3, 9);
    const TowerMatrix prod = b1 * w * b2;
    CHECK(bruhat_rank_matrix(prod) == bruhat_rank_matrix(w));
    CHECK(bruhat(prod).w == w);
  }
}

TEST_CASE("tower and Puiseux backends agree on rational input") {
  for (int trial = 0; trial < 20; ++trial) {
    const TowerMatrix g = random_sl(3, 20);
    const PuiseuxMatrix p = embed(g);
    const auto bt = bruhat(g);
    const auto bp = bruhat(p);
    CHECK(embed(bt.w) == bp.w);
    const auto kt = iwasawa_kau(g);
    const auto kp = iwasawa_kau(p);
    CHECK(embed(kt.k) == kp.k);
    CHECK(embed(kt.a) == kp.a);
    CHECK(member_K(kp.k));
    CHECK(member_A(kp.a));
    CHECK(member_U(kp.u));
  }
}
