#include "rcg/nilpotent.hpp"

namespace rcg::detail {
namespace {

Rational factorial(long n) {
  Rational f = 1;
  for (long k = 2; k <= n; ++k) f *= k;
  return f;
}

/// All sequences of pairs (r_i, s_i), r_i + s_i >= 1, with total degree d.
void pair_sequences(std::size_t remaining, std::vector<std::pair<long, long>>& current,
                    std::vector<std::vector<std::pair<long, long>>>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  for (std::size_t total = 1; total <= remaining; ++total) {
    for (std::size_t r = 0; r <= total; ++r) {
      current.emplace_back(static_cast<long>(r), static_cast<long>(total - r));
      pair_sequences(remaining - total, current, out);
      current.pop_back();
    }
  }
}

}  // namespace

std::vector<DynkinTerm> dynkin_terms(std::size_t degree) {
  std::vector<std::vector<std::pair<long, long>>> seqs;
  std::vector<std::pair<long, long>> current;
  pair_sequences(degree, current, seqs);
  std::map<std::vector<int>, Rational> acc;
  for (const auto& seq : seqs) {
    const long m = static_cast<long>(seq.size());
    Rational c(m % 2 ? 1 : -1, m);
    std::vector<int> word;
    for (const auto& [r, s] : seq) {
      c /= factorial(r) * factorial(s);
      word.insert(word.end(), static_cast<std::size_t>(r), 0);
      word.insert(word.end(), static_cast<std::size_t>(s), 1);
    }
    c /= static_cast<long>(degree);
    // [..., [a, a]] vanishes
    if (word.size() >= 2 && word[word.size() - 1] == word[word.size() - 2]) continue;
    acc[word] += c;
  }
  std::vector<DynkinTerm> out;
  for (auto& [w, c] : acc)
    if (sgn(c) != 0) out.push_back({c, w});
  return out;
}

}  // namespace rcg::detail
