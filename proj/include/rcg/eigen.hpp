#pragma once

#include <vector>

#include "rcg/field.hpp"
#include "rcg/matrix.hpp"

namespace rcg {

/// Real roots, with multiplicity, of a polynomial over the tower field
/// (coefficients from the constant term upwards). Handles rational-root
/// deflation and quadratic splitting; anything else throws UnsolvableSpectrum.
std::vector<TowerScalar> tower_roots(std::vector<TowerScalar> coeffs);

struct SymEigen {
  /// Strictly decreasing.
  std::vector<TowerScalar> values;
  /// Orthonormal columns, det = +1, first nonzero entry of each column positive
  /// (except possibly the last column, flipped to fix the determinant).
  TowerMatrix vectors;
};

/// Exact spectral decomposition of a symmetric matrix over the tower field.
SymEigen sym_eigen_tower(const TowerMatrix& s);

struct SymEigenLift {
  /// Strictly decreasing at leading order.
  std::vector<PuiseuxScalar> eigenvalues;
  TowerMatrix leading_vectors;
  PuiseuxMatrix eigenvectors;
  /// Every eigenvalue is known to this relative order below its own leading
  /// term; eigenvector entries are known to this absolute order.
  Rational certified_order;
};

/// Perturbative eigen-decomposition of a symmetric Puiseux matrix whose
/// leading coefficient matrix has distinct eigenvalues.
SymEigenLift sym_eigen_lift(const PuiseuxMatrix& s, const Rational& order);

}  // namespace rcg
