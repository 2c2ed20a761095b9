#include <vector>

#include "doctest.h"
#include "rcg/error.hpp"
#include "rcg/tower.hpp"
#include "test_util.hpp"

using namespace rcg;
using rcg::testing::random_rational;
using rcg::testing::SampleTower;

namespace {

TowerScalar q(long n, long d = 1) { return TowerScalar(make_rational(n, d)); }
TowerScalar sq(long n) { return sqrt_positive(q(n)); }

// Newton iteration x <- (x + 2/x)/2 from x = 3/2; brackets sqrt(2) by [2/x, x].
Interval newton_sqrt2(int steps) {
  Rational x(3, 2);
  for (int i = 0; i < steps; ++i) x = (x + 2 / x) / 2;
  return {2 / x, x};
}

}  // namespace

TEST_CASE("rational arithmetic") {
  CHECK(q(1, 2) + q(1, 3) == q(5, 6));
  CHECK((q(1, 2) + q(1, 3)).is_rational());
}

TEST_CASE("adjunction relations") {
  CHECK(sq(2) * sq(2) == q(2));
  CHECK((sq(2) * sq(2)).is_rational());
  CHECK((q(1) + sq(2)) * (q(1) - sq(2)) == q(-1));
  CHECK(sq(8) == q(2) * sq(2));
  CHECK(sq(4) == q(2));
  CHECK(sq(4).is_rational());
  CHECK(sq(2).depth() == 1);
}

TEST_CASE("invert") {
  CHECK(q(2).inverse() == q(1, 2));
  CHECK(sq(2).inverse() == sq(2) / q(2));
  const TowerScalar x = q(1) + sq(2);
  CHECK(x.inverse() == sq(2) - q(1));
  CHECK(x * x.inverse() == q(1));
  CHECK_THROWS_AS(q(0).inverse(), DomainError);
  CHECK_THROWS_AS(q(1) / (sq(2) - sq(2)), DomainError);
}

TEST_CASE("sign") {
  CHECK(q(0).sign() == 0);
  CHECK((sq(2) - q(1)).sign() == 1);
  CHECK((q(1) - sq(2)).sign() == -1);
  // sqrt(5 + 2 sqrt6) denests to sqrt2 + sqrt3 once the towers are merged
  const TowerScalar nested = sqrt_positive(q(5) + q(2) * sq(6));
  CHECK((sq(2) + sq(3) - nested).sign() == 0);
  CHECK(sq(2) + sq(3) == nested);
  // close convergents: 140/99 < sqrt2 < 99/70, and 577/408 - sqrt2 ~ 2e-6
  CHECK((sq(2) - q(140, 99)).sign() == 1);
  CHECK((sq(2) - q(99, 70)).sign() == -1);
  CHECK((sq(2) - q(577, 408)).sign() == -1);
}

TEST_CASE("sqrt_positive") {
  CHECK(sqrt_positive(q(4)) == q(2));
  CHECK(sqrt_positive(q(4)).is_rational());
  const TowerScalar r2 = sqrt_positive(q(2));
  CHECK(r2.depth() == 1);
  CHECK(r2 * r2 == q(2));
  CHECK(r2.sign() == 1);
  const TowerScalar lifted = sqrt_positive(q(3) + q(2) * r2);
  CHECK(lifted == q(1) + r2);
  CHECK(lifted.depth() == 1);  // no adjunction needed
  CHECK_THROWS_AS(sqrt_positive(q(-1)), DomainError);
  CHECK_THROWS_AS(sqrt_positive(q(0)), DomainError);
  CHECK_THROWS_AS(sqrt_positive(q(1) - r2), DomainError);
}

TEST_CASE("approx") {
  const Interval third = q(1, 3).approx(make_rational(1, 100));
  CHECK(third.contains(make_rational(1, 3)));
  CHECK(third.width() <= make_rational(1, 100));

  const Interval oracle = newton_sqrt2(4);
  const Interval r2 = sq(2).approx(make_rational(1, 1000));
  CHECK(r2.width() <= make_rational(1, 1000));
  CHECK(r2.lo >= make_rational(1414, 1000));
  CHECK(r2.hi <= make_rational(14143, 10000));
  // both enclosures contain sqrt2, so they overlap
  CHECK(r2.lo <= oracle.hi);
  CHECK(oracle.lo <= r2.hi);

  const Interval zero = q(0).approx(make_rational(1, 10));
  CHECK(zero.lo == 0);
  CHECK(zero.hi == 0);
}

TEST_CASE("approx soundness: nested and containing") {
  SampleTower t;
  for (int trial = 0; trial < 30; ++trial) {
    const TowerScalar a = t.random(9);
    Interval prev = a.approx(Rational(1));
    for (long k = 1; k <= 40; k *= 3) {
      const Interval next = a.approx(make_rational(1, k * k * k * 1000));
      // both contain a, so they intersect; width shrinks
      CHECK(next.lo <= prev.hi);
      CHECK(prev.lo <= next.hi);
      CHECK(next.width() <= make_rational(1, k * k * k * 1000));
      prev = next;
    }
    // a - mid is tiny: the sign of (a - lo) and (hi - a) is never negative
    CHECK((a - TowerScalar(prev.lo)).sign() >= 0);
    CHECK((TowerScalar(prev.hi) - a).sign() >= 0);
  }
}

TEST_CASE("field axioms on random triples") {
  SampleTower t;
  for (int trial = 0; trial < 60; ++trial) {
    const TowerScalar a = t.random(7), b = t.random(7), c = t.random(7);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + (-a) == TowerScalar());
    CHECK(a * b == b * a);
    if (!a.is_zero()) CHECK(a * a.inverse() == TowerScalar(1));
    CHECK(sign(a * b) == sign(a) * sign(b));
    if (sign(a) > 0 && sign(b) > 0) CHECK(sign(a + b) == 1);
  }
}

TEST_CASE("sqrt_positive squares back on 200 random positive elements") {
  SampleTower t;
  int done = 0;
  while (done < 200) {
    TowerScalar a = t.random(6);
    if (a.sign() == 0) continue;
    if (a.sign() < 0) a = -a;
    const TowerScalar r = sqrt_positive(a);
    CHECK(r * r == a);
    CHECK(r.sign() == 1);
    ++done;
  }
}

TEST_CASE("independent towers merge") {
  const TowerScalar a = sq(2) + sq(3);
  const TowerScalar b = sq(6);
  CHECK(a * a == q(5) + q(2) * b);
  // sqrt3 from two different constructions agree
  CHECK(sq(6) / sq(2) == sq(3));
  CHECK(sq(12) == q(2) * sq(3));
}

TEST_CASE("print/parse-friendly text") {
  CHECK(q(5, 6).to_string() == "5/6");
  CHECK(sq(2).to_string() == "sqrt(2)");
  CHECK((q(1) + sq(5)).to_string() == "1 + sqrt(5)");
  CHECK(((q(1) + sq(5)) / q(2)).to_string() == "(1 + sqrt(5))/2");
  CHECK((-sq(2) / q(2)).to_string() == "-sqrt(2)/2");
  CHECK(sqrt_positive(q(1) + sq(2)).to_string() == "sqrt(1 + sqrt(2))");
}
