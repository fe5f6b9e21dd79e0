// Local enhanced virtual element space: degrees of freedom, interpolation
// and the computable polynomial projectors.
//
// Scalar DOFs of one element (local ordering):
//   [vertex values | per-edge internal Gauss-Lobatto values | moments].
// The same scalar space is used for each velocity component and the pressure.

#ifndef VEM_VEMSPACE_HPP
#define VEM_VEMSPACE_HPP

#include <vector>

#include "vem/polybasis.hpp"
#include "vem/quadrature.hpp"

namespace vem {

enum class DofKind { vertex, edge, moment };

/// Global scalar DOF numbering: vertices, then (k-1) nodes per mesh edge
/// (ordered along the edge from its lower to higher vertex index), then
/// per-cell moments in graded-lex order.
struct DofLayout {
  int k = 1;
  int n_global = 0;
  int edge_dof_start = 0;
  int moment_dof_start = 0;
  std::vector<std::vector<int>> cell_dofs;  ///< local index -> global index
  std::vector<bool> boundary_dof;
  std::vector<DofKind> dof_kind;
  std::vector<Vector2> dof_point;  ///< evaluation point of vertex/edge DOFs

  int local_count(int cell) const { return static_cast<int>(cell_dofs[cell].size()); }
};

DofLayout build_dof_layout(const PolyMesh& mesh, int k);

/// Everything assembly needs on one element. All projector matrices map the
/// N_E local DOFs to monomial coefficients of the stated degree.
struct ElementOperators {
  int k = 1;
  ElementGeometry geom;
  MonomialBasis basis;     ///< degree k
  CalculusTables tables;   ///< H, gradient Gram and derivative maps
  int n_dofs = 0;          ///< N_E

  struct EdgeData {
    EdgeRule rule;              ///< mapped Gauss-Legendre, k+4 points
    MatrixX trace;              ///< (q x N_E) DOFs -> trace values at rule points
    MatrixX mono;               ///< (q x n_k) monomial values at rule points
    Vector2 normal;             ///< unit outward
    std::vector<int> local_dofs;  ///< the k+1 DOFs living on this edge, CCW
  };
  std::vector<EdgeData> edge;

  MatrixX dof_of_monomial;    ///< D, (N_E x n_k)
  MatrixX pi_nabla_k;         ///< (n_k x N_E)
  MatrixX pi_nabla_km1;       ///< (n_{k-1} x N_E)
  MatrixX moments;            ///< (n_k x N_E), rows <= k-2 from DOFs, k-1/k enhanced
  MatrixX pi0_k;              ///< (n_k x N_E)
  MatrixX pi0_grad_k[2];      ///< components of Pi0_k(grad .), (n_k x N_E)
  MatrixX pi0_grad_km1[2];    ///< components of Pi0_{k-1}(grad .), (n_{k-1} x N_E)
  MatrixX hat_nabla_k;        ///< D * pi_nabla_k, DOF-space projector
  MatrixX hat_nabla_km1;
  MatrixX hat0_k;
  double projector_residual = 0.0;  ///< rel. Frobenius error of G = B*D

  /// Interior quadrature of the requested exactness degree (cached).
  const PolygonRule& interior_rule(int degree) const;

 private:
  mutable std::vector<PolygonRule> rule_cache_;
};

/// Builds all projectors for one element. Throws SingularProjector when the
/// local G or H system is numerically singular (condition > 1e12) or when
/// the G = B*D identity fails beyond 1e-10 relative.
ElementOperators build_projectors(const ElementGeometry& geom, int k);

/// Local DOF vector of a smooth function: point values for vertex/edge DOFs,
/// scaled moments (degree-(2k+4) quadrature) for the interior ones.
VectorX interpolate(const ElementOperators& ops, const ScalarField& v);

/// Gauss-Lobatto points of the k+1 point rule, i.e. the edge DOF pattern.
const QuadratureRule1D& edge_node_rule(int k);

}  // namespace vem

#endif
