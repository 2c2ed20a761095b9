#include "rcg/eigen.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

#include "rcg/error.hpp"
#include "rcg/linalg.hpp"

namespace rcg {
namespace {

void trim(std::vector<TowerScalar>& c) {
  while (c.size() > 1 && c.back().is_zero()) c.pop_back();
}

/// Divides by (x - r); r must be a root.
std::vector<TowerScalar> deflate(const std::vector<TowerScalar>& c, const TowerScalar& r) {
  const std::size_t d = c.size() - 1;
  std::vector<TowerScalar> q(d);
  TowerScalar carry;
  for (std::size_t k = d; k-- > 0;) {
    carry = c[k + 1] + carry * r;
    q[k] = carry;
  }
  return q;
}

constexpr unsigned long kMaxTrialDivisions = 10'000'000;

std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> small, large;
  unsigned long steps = 0;
  for (Integer d = 1; d * d <= n; ++d) {
    if (++steps > kMaxTrialDivisions)
      throw DomainError(DomainErrorKind::UnsolvableSpectrum, "characteristic polynomial coefficients too large to factor");
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::optional<Rational> rational_root(const std::vector<Rational>& c) {
  Integer den = 1;
  for (const auto& q : c) den = lcm(den, q.get_den());
  std::vector<Integer> a;
  for (const auto& q : c) a.push_back(Integer(q * den));
  const auto ps = positive_divisors(a.front());
  const auto qs = positive_divisors(a.back());
  for (const auto& p : ps) {
    for (const auto& q : qs) {
      for (int s : {1, -1}) {
        Rational x(s * p, q);
        x.canonicalize();
        Rational acc = 0;
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
        if (sgn(acc) == 0) return x;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<TowerScalar> tower_roots(std::vector<TowerScalar> c) {
  trim(c);
  std::vector<TowerScalar> roots;
  while (c.size() > 1) {
    const std::size_t d = c.size() - 1;
    if (c.front().is_zero()) {
      roots.emplace_back(0);
      c.erase(c.begin());
      continue;
    }
    if (d == 1) {
      roots.push_back(-c[0] / c[1]);
      break;
    }
    if (d == 2) {
      const TowerScalar disc = c[1] * c[1] - TowerScalar(4) * c[0] * c[2];
      const int s = disc.sign();
      if (s < 0) throw DomainError(DomainErrorKind::UnsolvableSpectrum, "quadratic factor has no real roots");
      const TowerScalar inv2a = (TowerScalar(2) * c[2]).inverse();
      if (s == 0) {
        roots.push_back(-c[1] * inv2a);
        roots.push_back(-c[1] * inv2a);
      } else {
        const TowerScalar r = sqrt_positive(disc);
        roots.push_back((-c[1] + r) * inv2a);
        roots.push_back((-c[1] - r) * inv2a);
      }
      break;
    }
    std::vector<Rational> rc;
    for (const auto& x : c) {
      if (!x.is_rational())
        throw DomainError(DomainErrorKind::UnsolvableSpectrum, "cannot split a non-rational polynomial of degree > 2");
      rc.push_back(x.rational_value());
    }
    const auto r = rational_root(rc);
    if (!r) throw DomainError(DomainErrorKind::UnsolvableSpectrum, "no rational root to split off a factor of degree > 2");
    roots.emplace_back(*r);
    c = deflate(c, TowerScalar(*r));
  }
  return roots;
}

SymEigen sym_eigen_tower(const TowerMatrix& s) {
  if (!s.is_square()) throw DomainError(DomainErrorKind::DimensionMismatch, "eigenproblem needs a square matrix");
  if (!(s == s.transpose())) throw DomainError(DomainErrorKind::DimensionMismatch, "matrix is not symmetric");
  const std::size_t n = s.rows();
  std::vector<TowerScalar> values = tower_roots(char_poly(s));
  if (values.size() != n) throw DomainError(DomainErrorKind::UnsolvableSpectrum, "spectrum not fully resolved");
  std::sort(values.begin(), values.end(), [](const TowerScalar& a, const TowerScalar& b) { return a > b; });
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (values[i] == values[i + 1])
      throw DomainError(DomainErrorKind::RepeatedEigenvalue, "repeated eigenvalue " + values[i].to_string());
  }
  TowerMatrix vectors(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    TowerMatrix shifted = s;
    for (std::size_t k = 0; k < n; ++k) shifted(k, k) -= values[i];
    auto ker = kernel(shifted);
    if (ker.size() != 1) throw DomainError(DomainErrorKind::UnsolvableSpectrum, "eigenspace has unexpected dimension");
    std::vector<TowerScalar> v = std::move(ker.front());
    const TowerScalar norm = sqrt_positive(dot(v, v));
    TowerScalar scale = norm.inverse();
    for (const auto& x : v) {
      if (!x.is_zero()) {
        if (x.sign() < 0) scale = -scale;
        break;
      }
    }
    for (auto& x : v) x *= scale;
    vectors.set_column(i, v);
  }
  if (det(vectors).sign() < 0)
    for (std::size_t k = 0; k < n; ++k) vectors(k, n - 1) = -vectors(k, n - 1);
  return {std::move(values), std::move(vectors)};
}

namespace {

/// S / X^e0 = sum_j A_j eps^j with eps = X^(-1/m).
struct Expansion {
  Rational e0;
  Integer m;
  std::vector<TowerMatrix> a;
  /// Largest j for which A_j is known (all of them when the input is exact).
  std::optional<long> known;
};

Expansion expand(const PuiseuxMatrix& s) {
  const std::size_t n = s.rows();
  Expansion ex;
  ex.m = 1;
  std::optional<Rational> e0;
  std::optional<Rational> tail;
  for (const auto& x : s.data()) {
    ex.m = lcm(ex.m, x.ramification());
    if (!x.terms().empty()) e0 = e0 ? std::max(*e0, x.terms().front().exponent) : x.terms().front().exponent;
    if (x.tail()) {
      ex.m = lcm(ex.m, x.tail()->get_den());
      tail = tail ? std::max(*tail, *x.tail()) : *x.tail();
    }
  }
  if (!e0) throw DomainError(DomainErrorKind::DegenerateLeadingSpectrum, "matrix has no known nonzero entry");
  ex.e0 = *e0;
  ex.m = lcm(ex.m, e0->get_den());
  long jmax = 0;
  std::map<long, TowerMatrix> blocks;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (const auto& t : s(i, k).terms()) {
        const Rational j = (ex.e0 - t.exponent) * Rational(ex.m);
        const long jj = j.get_num().get_si();
        jmax = std::max(jmax, jj);
        auto it = blocks.try_emplace(jj, TowerMatrix(n, n)).first;
        it->second(i, k) = t.coeff;
      }
    }
  }
  if (tail) {
    // A_j is known while e0 - j/m > tail
    const Rational limit = (ex.e0 - *tail) * Rational(ex.m);
    ex.known = limit.get_num().get_si() - 1;
    jmax = std::min(jmax, *ex.known);
  }
  ex.a.assign(static_cast<std::size_t>(jmax + 1), TowerMatrix(n, n));
  for (auto& [j, block] : blocks)
    if (j <= jmax) ex.a[static_cast<std::size_t>(j)] = std::move(block);
  return ex;
}

PuiseuxScalar series(const std::vector<TowerScalar>& coeffs, const Rational& top, const Integer& m, long tail_index) {
  std::vector<PuiseuxTerm> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k) terms.push_back({top - Rational(static_cast<long>(k)) / Rational(m), coeffs[k]});
  return PuiseuxScalar::from_terms(std::move(terms), top - Rational(tail_index) / Rational(m));
}

}  // namespace

SymEigenLift sym_eigen_lift(const PuiseuxMatrix& s, const Rational& order) {
  if (!s.is_square()) throw DomainError(DomainErrorKind::DimensionMismatch, "eigenproblem needs a square matrix");
  if (!(s == s.transpose())) throw DomainError(DomainErrorKind::DimensionMismatch, "matrix is not symmetric");
  if (sgn(order) <= 0) throw DomainError(DomainErrorKind::NotPositive, "lift order must be positive");
  const std::size_t n = s.rows();
  const Expansion ex = expand(s);

  SymEigen lead;
  try {
    lead = sym_eigen_tower(ex.a.front());
  } catch (const DomainError& e) {
    if (e.kind() == DomainErrorKind::RepeatedEigenvalue)
      throw DomainError(DomainErrorKind::DegenerateLeadingSpectrum, "leading coefficient matrix has a repeated eigenvalue");
    throw;
  }
  const TowerMatrix& q = lead.vectors;
  const std::vector<TowerScalar>& mu = lead.values;

  // Index (in eps-steps) of the first nonzero term of each eigenvalue. Only a
  // zero leading eigenvalue (at most one) starts late; det S fixes where.
  std::vector<long> start(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!mu[i].is_zero()) continue;
    const PuiseuxScalar d = det(s);
    if (d.known_zero()) {
      if (d.is_exact())
        throw DomainError(DomainErrorKind::DegenerateLeadingSpectrum, "singular matrix: an eigenvalue has no leading term");
      throw IndeterminateSign("determinant unknown at this truncation; raise the truncation order");
    }
    const Rational gap = Rational(static_cast<long>(n)) * ex.e0 - *d.lead_exponent();
    start[i] = Rational(gap * Rational(ex.m)).get_num().get_si();
  }
  const long k_first = *std::max_element(start.begin(), start.end());
  long k_total = k_first + static_cast<long>(ceil(order * Rational(ex.m)).get_si());
  if (ex.known) k_total = std::min(k_total, *ex.known);
  if (k_total < k_first) throw IndeterminateSign("input truncated above the smallest eigenvalue; raise the truncation order");

  std::vector<TowerMatrix> b;
  b.reserve(ex.a.size());
  const TowerMatrix qt = q.transpose();
  for (const auto& a : ex.a) b.push_back(qt * a * q);
  auto b_at = [&](long j) -> const TowerMatrix* {
    return j < static_cast<long>(b.size()) ? &b[static_cast<std::size_t>(j)] : nullptr;
  };

  SymEigenLift out;
  out.leading_vectors = q;
  out.eigenvectors = PuiseuxMatrix(n, n);
  const Truncation trunc{Rational(k_total + 1) / Rational(ex.m)};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<TowerScalar>> w;  // w[k] = k-th correction of the eigenvector
    std::vector<TowerScalar> lam;
    w.emplace_back(n, TowerScalar());
    w[0][i] = TowerScalar(1);
    lam.push_back(mu[i]);
    for (long k = 1; k <= k_total; ++k) {
      // r = sum_{j=1..k} B_j w^(k-j)
      std::vector<TowerScalar> r(n);
      for (long j = 1; j <= k; ++j) {
        const TowerMatrix* bj = b_at(j);
        if (!bj) break;
        const auto& wk = w[static_cast<std::size_t>(k - j)];
        for (std::size_t l = 0; l < n; ++l)
          for (std::size_t c = 0; c < n; ++c) r[l] += (*bj)(l, c) * wk[c];
      }
      lam.push_back(r[i]);
      std::vector<TowerScalar> next(n);
      for (std::size_t l = 0; l < n; ++l) {
        if (l == i) continue;
        TowerScalar rhs = r[l];
        for (long j = 1; j <= k; ++j) rhs -= lam[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(k - j)][l];
        next[l] = rhs / (mu[i] - mu[l]);
      }
      w.push_back(std::move(next));
    }
    out.eigenvalues.push_back(series(lam, ex.e0, ex.m, k_total + 1));

    std::vector<PuiseuxScalar> wv;
    for (std::size_t l = 0; l < n; ++l) {
      std::vector<TowerScalar> coeffs;
      for (const auto& wk : w) coeffs.push_back(wk[l]);
      wv.push_back(series(coeffs, Rational(0), ex.m, k_total + 1));
    }
    const PuiseuxScalar scale = inverse(sqrt_positive(dot(wv, wv), trunc), trunc);
    for (std::size_t r = 0; r < n; ++r) {
      PuiseuxScalar acc;
      for (std::size_t l = 0; l < n; ++l) acc += PuiseuxScalar(q(r, l)) * wv[l];
      out.eigenvectors(r, i) = acc * scale;
    }
  }
  out.certified_order = Rational(k_total + 1 - k_first) / Rational(ex.m);
  return out;
}

}  // namespace rcg
