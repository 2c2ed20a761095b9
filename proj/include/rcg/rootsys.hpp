#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rcg/rational.hpp"

namespace rcg {

/// Integer coordinates over the simple roots.
using LatticeVector = std::vector<long>;
using IntMatrix = std::vector<std::vector<long>>;

/// Finite crystallographic root system, in coordinates over its simple roots.
struct RootSystem {
  std::string type;
  std::size_t rank = 0;
  /// <delta_i, delta_j>.
  std::vector<std::vector<Rational>> gram;
  /// All roots; the first `rank` are the simple roots.
  std::vector<LatticeVector> roots;
  std::vector<LatticeVector> positive_roots;

  Rational inner(const LatticeVector& a, const LatticeVector& b) const;
  /// r_alpha(v) = v - 2<v,alpha>/<alpha,alpha> alpha.
  LatticeVector reflect(const LatticeVector& alpha, const LatticeVector& v) const;
  LatticeVector simple(std::size_t i) const;
  bool contains(const LatticeVector& v) const;
};

/// "A1".."A9", "B2" or "G2"; anything else throws UnsupportedType.
RootSystem build_root_system(const std::string& type);

/// 2<a,b>/<a,a> is an integer for every pair, 0 is not a root, and -roots = roots.
bool is_crystallographic(const RootSystem& rs);

struct WeylGroup {
  /// Matrices acting on simple-root coordinates (column j = image of delta_j);
  /// element 0 is the identity.
  std::vector<IntMatrix> elements;
  /// Reduced words in the simple reflections (0-based indices).
  std::vector<std::vector<std::size_t>> words;

  std::size_t order() const { return elements.size(); }
  /// table[i][j] = index of elements[i] * elements[j].
  std::vector<std::vector<std::size_t>> multiplication_table() const;
};

WeylGroup weyl_group(const RootSystem& rs);

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
LatticeVector apply(const IntMatrix& m, const LatticeVector& v);

struct ConeData {
  /// Coroots 2 delta_i / <delta_i, delta_i>, in simple-root coordinates.
  std::vector<std::vector<Rational>> x;
  /// gamma_j: primitive lattice vector with <gamma_j, delta_i> = 0 for i != j
  /// and <gamma_j, delta_j> > 0. The same coefficient vectors, read in the
  /// basis H_k of the torus side, give the vectors e_j.
  std::vector<LatticeVector> gamma;
};

ConeData cone_data(const RootSystem& rs);

/// Sum of the positive roots.
LatticeVector eta_plus(const RootSystem& rs);

/// Coefficients <eta, delta_l> / <gamma_l, delta_l> expressing eta over the gamma_l.
std::vector<Rational> gamma_expansion(const RootSystem& rs, const ConeData& cone, const LatticeVector& eta);

std::vector<Rational> eta_plus_expansion(const RootSystem& rs);

}  // namespace rcg
