#include "vem/polybasis.hpp"

#include <cmath>

#include "vem/quadrature.hpp"

namespace vem {

MonomialBasis::MonomialBasis(int degree_, const Vector2& center_, double h_)
    : degree(degree_), center(center_), h(h_) {
  for (int d = 0; d <= degree; ++d)
    for (int px = d; px >= 0; --px) exponents.emplace_back(px, d - px);
}

int MonomialBasis::index_of(int px, int py) {
  const int d = px + py;
  return d * (d + 1) / 2 + (d - px);
}

VectorX MonomialBasis::eval(const Vector2& p) const {
  const double xi = (p.x() - center.x()) / h;
  const double eta = (p.y() - center.y()) / h;
  // power tables keep this exact for the (0,0) row at the centroid
  std::vector<double> px(degree + 1, 1.0), py(degree + 1, 1.0);
  for (int d = 1; d <= degree; ++d) {
    px[d] = px[d - 1] * xi;
    py[d] = py[d - 1] * eta;
  }
  VectorX out(size());
  for (int b = 0; b < size(); ++b) out[b] = px[exponents[b].first] * py[exponents[b].second];
  return out;
}

MatrixX MonomialBasis::eval(const std::vector<Vector2>& pts) const {
  MatrixX out(pts.size(), size());
  for (std::size_t i = 0; i < pts.size(); ++i) out.row(i) = eval(pts[i]).transpose();
  return out;
}

MatrixX MonomialBasis::eval_gradient(const Vector2& p) const {
  const double xi = (p.x() - center.x()) / h;
  const double eta = (p.y() - center.y()) / h;
  std::vector<double> px(degree + 1, 1.0), py(degree + 1, 1.0);
  for (int d = 1; d <= degree; ++d) {
    px[d] = px[d - 1] * xi;
    py[d] = py[d - 1] * eta;
  }
  MatrixX out(size(), 2);
  for (int b = 0; b < size(); ++b) {
    const auto [a, c] = exponents[b];
    out(b, 0) = a == 0 ? 0.0 : a * px[a - 1] * py[c] / h;
    out(b, 1) = c == 0 ? 0.0 : c * px[a] * py[c - 1] / h;
  }
  return out;
}

CalculusTables build_tables(const MonomialBasis& basis, const ElementGeometry& geom) {
  const int n = basis.size();
  CalculusTables t{basis, MatrixX::Zero(n, n), MatrixX::Zero(n, n), MatrixX::Zero(n, n),
                   MatrixX::Zero(n, n), MatrixX::Zero(n, n)};
  for (int b = 0; b < n; ++b) {
    const auto [px, py] = basis.exponents[b];
    if (px > 0) t.dx_map(MonomialBasis::index_of(px - 1, py), b) = px / basis.h;
    if (py > 0) t.dy_map(MonomialBasis::index_of(px, py - 1), b) = py / basis.h;
    if (px > 1)
      t.laplace_map(MonomialBasis::index_of(px - 2, py), b) = px * (px - 1) / (basis.h * basis.h);
    if (py > 1)
      t.laplace_map(MonomialBasis::index_of(px, py - 2), b) += py * (py - 1) / (basis.h * basis.h);
  }

  // H from the degree-2k monomial integrals: m_a * m_b = m_{a+b} exactly.
  const std::vector<double> ints = integrate_monomials(geom, basis.degree);
  for (int a = 0; a < n; ++a) {
    const auto [ax, ay] = basis.exponents[a];
    for (int b = a; b < n; ++b) {
      const auto [bx, by] = basis.exponents[b];
      const double v = ints[MonomialBasis::index_of(ax + bx, ay + by)];
      t.mass(a, b) = v;
      t.mass(b, a) = v;
    }
  }
  t.grad_gram = t.dx_map.transpose() * t.mass * t.dx_map + t.dy_map.transpose() * t.mass * t.dy_map;
  return t;
}

}  // namespace vem
