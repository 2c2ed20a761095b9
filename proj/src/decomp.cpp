#include "rcg/decomp.hpp"

namespace rcg {

KAKResult<TowerScalar> cartan_kak(const TowerMatrix& g) {
  require_sl(g);
  const std::size_t n = g.rows();
  const SymEigen e = sym_eigen_tower(g.transpose() * g);
  TowerMatrix a(n, n), a_inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = sqrt_positive(e.values[i]);
    a_inv(i, i) = a(i, i).inverse();
  }
  TowerMatrix k1 = g * e.vectors * a_inv;
  return {std::move(k1), std::move(a), e.vectors.transpose(), std::nullopt};
}

Rational vanishing_order(const PuiseuxMatrix& m, const Rational& scale) {
  std::optional<Rational> worst;
  for (const auto& x : m.data()) {
    if (!x.known_zero()) return Rational(-1);
    if (x.tail()) worst = worst ? std::min(*worst, Rational(scale - *x.tail())) : Rational(scale - *x.tail());
  }
  return worst ? *worst : Rational(1000000);
}

Rational max_lead(const PuiseuxMatrix& m) {
  std::optional<Rational> best;
  for (const auto& x : m.data())
    if (!x.terms().empty()) best = best ? std::max(*best, x.terms().front().exponent) : x.terms().front().exponent;
  return best.value_or(Rational(0));
}

Rational kak_certified_order(const PuiseuxMatrix& g, const KAKResult<PuiseuxScalar>& r) {
  const std::size_t n = g.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !r.a(i, j).known_zero()) return Rational(-1);
    }
    if (r.a(i, i).sign() <= 0) return Rational(-1);
    if (i + 1 < n && (r.a(i, i) - r.a(i + 1, i + 1)).sign() < 0) return Rational(-1);
  }
  const PuiseuxMatrix id = PuiseuxMatrix::identity(n);
  Rational order = vanishing_order(r.k1 * r.a * r.k2 - g, max_lead(g));
  order = std::min(order, vanishing_order(r.k1 * r.k1.transpose() - id, 0));
  order = std::min(order, vanishing_order(r.k2 * r.k2.transpose() - id, 0));
  for (const auto* k : {&r.k1, &r.k2}) {
    const PuiseuxMatrix d(1, 1, {det(*k) - PuiseuxScalar(1)});
    order = std::min(order, vanishing_order(d, 0));
  }
  return order;
}

KAKResult<PuiseuxScalar> cartan_kak(const PuiseuxMatrix& g, const Rational& order) {
  require_sl(g);
  const std::size_t n = g.rows();
  const PuiseuxMatrix s = g.transpose() * g;
  Rational lift_order = order;
  Rational achieved = -1;
  for (int attempt = 0; attempt < 5; ++attempt) {
    const SymEigenLift e = sym_eigen_lift(s, lift_order);
    const Truncation trunc{e.certified_order + max_lead(s) + order + 1};
    PuiseuxMatrix a(n, n), a_inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      a(i, i) = sqrt_positive(e.eigenvalues[i], trunc);
      a_inv(i, i) = inverse(a(i, i), trunc);
    }
    KAKResult<PuiseuxScalar> r{g * e.eigenvectors * a_inv, a, e.eigenvectors.transpose(), std::nullopt};
    achieved = kak_certified_order(g, r);
    if (achieved >= order) {
      r.certified_order = achieved;
      return r;
    }
    lift_order = 2 * lift_order + (order - std::max(achieved, Rational(0)));
  }
  throw IndeterminateSign("Cartan decomposition certified only through relative order " + to_string(achieved) +
                          "; raise the truncation order");
}

std::vector<std::size_t> permutation_from_ranks(const std::vector<std::vector<std::size_t>>& r) {
  const std::size_t n = r.size();
  auto at = [&](std::size_t i, long j) -> long {
    if (i >= n || j < 0) return 0;
    return static_cast<long>(r[i][static_cast<std::size_t>(j)]);
  };
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const long jj = static_cast<long>(j);
      if (at(i, jj) - at(i + 1, jj) - at(i, jj - 1) + at(i + 1, jj - 1) == 1) perm[i] = j;
    }
  return perm;
}

}  // namespace rcg
