#include "rcg/slgroup.hpp"

#include <algorithm>
#include <numeric>

namespace rcg {

QuotientTable n_mod_m_classes(const std::vector<TowerMatrix>& elements) {
  QuotientTable q;
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (const auto& g : elements) {
    if (!member_N(g)) throw DomainError(DomainErrorKind::NotInGroup, "element is not a signed permutation in SL_n");
    const auto pattern = permutation_pattern(g);
    auto [it, inserted] = index.try_emplace(pattern, q.reps.size());
    if (inserted) q.reps.push_back(g);
    q.class_of.push_back(it->second);
  }
  const std::size_t k = q.reps.size();
  q.table.assign(k, std::vector<std::size_t>(k));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      const auto it = index.find(permutation_pattern(TowerMatrix(q.reps[a] * q.reps[b])));
      if (it == index.end()) throw DomainError(DomainErrorKind::NotClosed, "classes are not closed under multiplication");
      q.table[a][b] = it->second;
    }
  }
  return q;
}

bool tables_isomorphic(const std::vector<std::vector<std::size_t>>& a, const std::vector<std::vector<std::size_t>>& b) {
  const std::size_t n = a.size();
  if (b.size() != n) return false;
  std::vector<std::size_t> phi(n);
  std::iota(phi.begin(), phi.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) ok = phi[a[i][j]] == b[phi[i]][phi[j]];
    if (ok) return true;
  } while (std::next_permutation(phi.begin(), phi.end()));
  return false;
}

}  // namespace rcg

namespace rcg {

std::vector<TowerMatrix> enumerate_N(std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<TowerMatrix> out;
  do {
    for (std::size_t signs = 0; signs < (std::size_t{1} << n); ++signs) {
      TowerMatrix g(n, n);
      for (std::size_t i = 0; i < n; ++i) g(i, perm[i]) = TowerScalar((signs >> i) & 1 ? -1 : 1);
      if (det(g) == TowerScalar(1)) out.push_back(std::move(g));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace rcg
