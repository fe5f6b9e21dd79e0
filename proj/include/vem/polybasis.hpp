// Scaled monomial bases m_beta(x) = ((x - x_E)/h_E)^beta with evaluation,
// derivative maps and Gram matrices.

#ifndef VEM_POLYBASIS_HPP
#define VEM_POLYBASIS_HPP

#include <vector>

#include "vem/common.hpp"
#include "vem/mesh.hpp"

namespace vem {

/// Multi-index count for degree <= k in two variables.
inline int monomial_count(int k) { return k < 0 ? 0 : (k + 1) * (k + 2) / 2; }

/// Graded-lex ordering, fixed project-wide:
/// (0,0) | (1,0) (0,1) | (2,0) (1,1) (0,2) | ...
struct MonomialBasis {
  int degree;
  Vector2 center;
  double h;
  std::vector<std::pair<int, int>> exponents;

  MonomialBasis() : MonomialBasis(0, Vector2::Zero(), 1.0) {}
  MonomialBasis(int degree_, const Vector2& center_, double h_);

  int size() const { return static_cast<int>(exponents.size()); }
  static int index_of(int px, int py);

  /// Row of values (one per basis function) at a point.
  VectorX eval(const Vector2& p) const;
  /// Rows of values at many points.
  MatrixX eval(const std::vector<Vector2>& pts) const;
  /// Gradient of every basis function at a point (size x 2).
  MatrixX eval_gradient(const Vector2& p) const;
};

/// Exact-calculus tables for one element.
struct CalculusTables {
  MonomialBasis basis;  ///< degree k

  /// dm_beta/dx and /dy as coefficient maps into the same degree-k basis
  /// (entries only touch degree <= k-1 rows); carry the 1/h factor.
  MatrixX dx_map;  ///< (n_k x n_k), column beta = coefficients of d m_beta/dx
  MatrixX dy_map;
  /// Laplacian coefficients, column beta = coefficients of Laplace(m_beta).
  MatrixX laplace_map;

  MatrixX mass;       ///< H_{ab} = int m_a m_b, degree-2k exact quadrature
  MatrixX grad_gram;  ///< Gt_{ab} = int grad m_a . grad m_b

  /// Leading principal block of the mass matrix for a lower degree.
  MatrixX mass_block(int rows, int cols) const { return mass.topLeftCorner(rows, cols); }
};

CalculusTables build_tables(const MonomialBasis& basis, const ElementGeometry& geom);

}  // namespace vem

#endif
