#include "rcg/rootsys.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <regex>

#include "rcg/error.hpp"
#include "rcg/linalg.hpp"

namespace rcg {

Rational RootSystem::inner(const LatticeVector& a, const LatticeVector& b) const {
  Rational s = 0;
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j) s += Rational(a[i] * b[j]) * gram[i][j];
  return s;
}

LatticeVector RootSystem::reflect(const LatticeVector& alpha, const LatticeVector& v) const {
  const Rational c = 2 * inner(v, alpha) / inner(alpha, alpha);
  if (c.get_den() != 1) throw DomainError(DomainErrorKind::NotClosed, "reflection leaves the root lattice");
  const long k = c.get_num().get_si();
  LatticeVector out = v;
  for (std::size_t i = 0; i < rank; ++i) out[i] -= k * alpha[i];
  return out;
}

LatticeVector RootSystem::simple(std::size_t i) const {
  LatticeVector v(rank, 0);
  v[i] = 1;
  return v;
}

bool RootSystem::contains(const LatticeVector& v) const { return std::find(roots.begin(), roots.end(), v) != roots.end(); }

namespace {

std::vector<std::vector<Rational>> gram_for(const std::string& type, std::size_t& rank) {
  std::smatch m;
  static const std::regex a_type("A([1-9])");
  if (std::regex_match(type, m, a_type)) {
    rank = static_cast<std::size_t>(std::stoul(m[1]));
    std::vector<std::vector<Rational>> g(rank, std::vector<Rational>(rank, Rational(0)));
    for (std::size_t i = 0; i < rank; ++i) {
      g[i][i] = 2;
      if (i + 1 < rank) g[i][i + 1] = g[i + 1][i] = -1;
    }
    return g;
  }
  rank = 2;
  // delta_1 long, delta_2 short for B2; delta_1 short, delta_2 long for G2
  if (type == "B2") return {{Rational(2), Rational(-1)}, {Rational(-1), Rational(1)}};
  if (type == "G2") return {{Rational(2), Rational(-3)}, {Rational(-3), Rational(6)}};
  throw DomainError(DomainErrorKind::UnsupportedType, "unsupported root system type '" + type + "'");
}

}  // namespace

RootSystem build_root_system(const std::string& type) {
  RootSystem rs;
  rs.type = type;
  rs.gram = gram_for(type, rs.rank);
  for (std::size_t i = 0; i < rs.rank; ++i) rs.roots.push_back(rs.simple(i));
  // close under simple reflections
  std::deque<LatticeVector> queue(rs.roots.begin(), rs.roots.end());
  while (!queue.empty()) {
    const LatticeVector v = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < rs.rank; ++i) {
      LatticeVector w = rs.reflect(rs.simple(i), v);
      if (!rs.contains(w)) {
        rs.roots.push_back(w);
        queue.push_back(std::move(w));
      }
    }
  }
  for (const auto& r : rs.roots)
    if (std::all_of(r.begin(), r.end(), [](long c) { return c >= 0; })) rs.positive_roots.push_back(r);
  if (!is_crystallographic(rs)) throw Error("root system '" + type + "' failed the crystallographic axioms");
  return rs;
}

bool is_crystallographic(const RootSystem& rs) {
  for (const auto& a : rs.roots) {
    if (std::all_of(a.begin(), a.end(), [](long c) { return c == 0; })) return false;
    LatticeVector neg = a;
    for (auto& c : neg) c = -c;
    if (!rs.contains(neg)) return false;
    for (const auto& b : rs.roots) {
      const Rational c = 2 * rs.inner(a, b) / rs.inner(a, a);
      if (c.get_den() != 1) return false;
      if (!rs.contains(rs.reflect(a, b))) return false;
    }
  }
  // every root is a nonnegative or nonpositive combination of the simple roots
  for (const auto& a : rs.roots) {
    const bool pos = std::all_of(a.begin(), a.end(), [](long c) { return c >= 0; });
    const bool neg = std::all_of(a.begin(), a.end(), [](long c) { return c <= 0; });
    if (!pos && !neg) return false;
  }
  return true;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix out(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

LatticeVector apply(const IntMatrix& m, const LatticeVector& v) {
  LatticeVector out(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

WeylGroup weyl_group(const RootSystem& rs) {
  const std::size_t r = rs.rank;
  std::vector<IntMatrix> gens;
  for (std::size_t i = 0; i < r; ++i) {
    IntMatrix s(r, std::vector<long>(r, 0));
    for (std::size_t j = 0; j < r; ++j) {
      const LatticeVector img = rs.reflect(rs.simple(i), rs.simple(j));
      for (std::size_t k = 0; k < r; ++k) s[k][j] = img[k];
    }
    gens.push_back(std::move(s));
  }
  IntMatrix id(r, std::vector<long>(r, 0));
  for (std::size_t i = 0; i < r; ++i) id[i][i] = 1;
  WeylGroup w;
  std::map<IntMatrix, std::size_t> index;
  w.elements.push_back(id);
  w.words.emplace_back();
  index.emplace(id, 0);
  // breadth-first search gives words of minimal length
  for (std::size_t head = 0; head < w.elements.size(); ++head) {
    for (std::size_t i = 0; i < r; ++i) {
      IntMatrix next = multiply(w.elements[head], gens[i]);
      if (index.count(next)) continue;
      index.emplace(next, w.elements.size());
      auto word = w.words[head];
      word.push_back(i);
      w.elements.push_back(std::move(next));
      w.words.push_back(std::move(word));
    }
  }
  return w;
}

std::vector<std::vector<std::size_t>> WeylGroup::multiplication_table() const {
  std::map<IntMatrix, std::size_t> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], i);
  std::vector<std::vector<std::size_t>> table(elements.size(), std::vector<std::size_t>(elements.size()));
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = 0; j < elements.size(); ++j) table[i][j] = index.at(multiply(elements[i], elements[j]));
  return table;
}

ConeData cone_data(const RootSystem& rs) {
  const std::size_t r = rs.rank;
  ConeData cd;
  for (std::size_t i = 0; i < r; ++i) {
    const Rational scale = 2 / rs.gram[i][i];
    std::vector<Rational> x(r, Rational(0));
    x[i] = scale;
    cd.x.push_back(std::move(x));
  }
  for (std::size_t j = 0; j < r; ++j) {
    LatticeVector gamma(r, 0);
    if (r == 1) {
      gamma[0] = 1;
    } else {
      // rows: <., delta_i> for i != j
      TowerMatrix m(r - 1, r);
      std::size_t row = 0;
      for (std::size_t i = 0; i < r; ++i) {
        if (i == j) continue;
        for (std::size_t k = 0; k < r; ++k) m(row, k) = TowerScalar(rs.gram[k][i]);
        ++row;
      }
      const auto ker = kernel(m);
      if (ker.size() != 1) throw Error("degenerate gram matrix");
      Integer den = 1;
      for (const auto& c : ker.front()) den = lcm(den, c.rational_value().get_den());
      std::vector<Integer> ints;
      Integer g = 0;
      for (const auto& c : ker.front()) {
        ints.push_back(Integer(c.rational_value() * den));
        g = gcd(g, ints.back());
      }
      for (std::size_t k = 0; k < r; ++k) gamma[k] = Integer(ints[k] / g).get_si();
    }
    if (rs.inner(gamma, rs.simple(j)) < 0)
      for (auto& c : gamma) c = -c;
    cd.gamma.push_back(std::move(gamma));
  }
  return cd;
}

LatticeVector eta_plus(const RootSystem& rs) {
  LatticeVector s(rs.rank, 0);
  for (const auto& a : rs.positive_roots)
    for (std::size_t i = 0; i < rs.rank; ++i) s[i] += a[i];
  return s;
}

std::vector<Rational> gamma_expansion(const RootSystem& rs, const ConeData& cone, const LatticeVector& eta) {
  std::vector<Rational> out;
  for (std::size_t l = 0; l < rs.rank; ++l) {
    const LatticeVector d = rs.simple(l);
    out.push_back(rs.inner(eta, d) / rs.inner(cone.gamma[l], d));
  }
  return out;
}

std::vector<Rational> eta_plus_expansion(const RootSystem& rs) {
  return gamma_expansion(rs, cone_data(rs), eta_plus(rs));
}

}  // namespace rcg
