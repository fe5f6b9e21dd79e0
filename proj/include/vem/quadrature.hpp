// 1D Gauss rules and polygon rules exact to a requested degree.

#ifndef VEM_QUADRATURE_HPP
#define VEM_QUADRATURE_HPP

#include <vector>

#include "vem/common.hpp"
#include "vem/mesh.hpp"

namespace vem {

/// Rule on [-1,1]; n Gauss-Legendre points are exact to degree 2n-1,
/// n Gauss-Lobatto points to degree 2n-3.
struct QuadratureRule1D {
  std::vector<double> point;
  std::vector<double> weight;
  int size() const { return static_cast<int>(point.size()); }
};

QuadratureRule1D gauss_legendre(int n);
QuadratureRule1D gauss_lobatto(int n);

/// Interior rule on a polygon; weights sum to the area.
struct PolygonRule {
  std::vector<Vector2> point;
  std::vector<double> weight;
  int degree = 0;
  int size() const { return static_cast<int>(point.size()); }
};

/// Builds a rule exact for polynomials up to `degree` by fanning triangles
/// from the centroid, falling back to ear clipping when the fan folds.
PolygonRule polygon_rule(const ElementGeometry& geom, int degree);

/// A 1D rule mapped onto the segment [a,b]; weights sum to |b-a|.
struct EdgeRule {
  std::vector<Vector2> point;
  std::vector<double> weight;
  int size() const { return static_cast<int>(point.size()); }
};

EdgeRule map_to_edge(const QuadratureRule1D& rule, const Vector2& a, const Vector2& b);

/// All integrals \int_E m_alpha dE for |alpha| <= 2k in graded-lex order,
/// m_alpha the scaled monomials of the element.
std::vector<double> integrate_monomials(const ElementGeometry& geom, int k);

}  // namespace vem

#endif
