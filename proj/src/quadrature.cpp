#include "vem/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "vem/polybasis.hpp"

namespace vem {

namespace {

// Legendre P_n(x) and derivative by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int j = 2; j <= n; ++j) {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

QuadratureRule1D gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre needs n >= 1");
  QuadratureRule1D rule;
  rule.point.resize(n);
  rule.weight.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const auto [p, dp] = legendre(n, x);
    (void)p;
    rule.point[i] = x;
    rule.weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  if (n % 2 == 1) rule.point[n / 2] = 0.0;  // middle node is exactly 0
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return rule.point[a] < rule.point[b]; });
  QuadratureRule1D sorted;
  for (int i : idx) {
    sorted.point.push_back(rule.point[i]);
    sorted.weight.push_back(rule.weight[i]);
  }
  return sorted;
}

QuadratureRule1D gauss_lobatto(int n) {
  if (n < 2) throw DomainError("gauss_lobatto needs n >= 2");
  QuadratureRule1D rule;
  rule.point.resize(n);
  rule.weight.resize(n);
  const double endw = 2.0 / (n * (n - 1.0));
  rule.point[0] = -1.0;
  rule.point[n - 1] = 1.0;
  rule.weight[0] = rule.weight[n - 1] = endw;
  // interior nodes are the extrema of P_{n-1}
  for (int i = 1; i < n - 1; ++i) {
    double x = std::cos(M_PI * i / (n - 1.0));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n - 1, x);
      // Newton on dP/dx: d2p from the Legendre ODE
      const double d2p = (2.0 * x * dp - (n - 1.0) * n * p) / (1.0 - x * x);
      const double dx = dp / d2p;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const auto [p, dp] = legendre(n - 1, x);
    (void)dp;
    rule.point[i] = x;
    rule.weight[i] = endw / (p * p);
  }
  if (n % 2 == 1) rule.point[n / 2] = 0.0;
  std::reverse(rule.point.begin() + 1, rule.point.end() - 1);
  std::reverse(rule.weight.begin() + 1, rule.weight.end() - 1);
  return rule;
}

EdgeRule map_to_edge(const QuadratureRule1D& rule, const Vector2& a, const Vector2& b) {
  EdgeRule er;
  const double half = 0.5 * (b - a).norm();
  er.point.reserve(rule.size());
  er.weight.reserve(rule.size());
  for (int i = 0; i < rule.size(); ++i) {
    const double t = 0.5 * (1.0 + rule.point[i]);
    er.point.push_back(a + t * (b - a));
    er.weight.push_back(rule.weight[i] * half);
  }
  return er;
}

namespace {

void append_triangle_rule(PolygonRule& out, const Vector2& v0, const Vector2& v1,
                          const Vector2& v2, int degree) {
  // Duffy map of a tensor Gauss rule; exact for polynomials up to `degree`.
  const double jac = (v1 - v0).x() * (v2 - v0).y() - (v1 - v0).y() * (v2 - v0).x();
  const int nu = degree / 2 + 2;       // covers degree+1 in u (Duffy Jacobian)
  const int nv = (degree + 3) / 2;     // covers degree in v
  const QuadratureRule1D gu = gauss_legendre(nu);
  const QuadratureRule1D gv = gauss_legendre(std::max(1, nv));
  for (int i = 0; i < gu.size(); ++i) {
    const double u = 0.5 * (1.0 + gu.point[i]);
    for (int j = 0; j < gv.size(); ++j) {
      const double v = 0.5 * (1.0 + gv.point[j]);
      const double xi = u * (1.0 - v);
      const double eta = u * v;
      out.point.push_back(v0 + xi * (v1 - v0) + eta * (v2 - v0));
      out.weight.push_back(0.25 * gu.weight[i] * gv.weight[j] * u * jac);
    }
  }
}

// Ear clipping of a simple CCW polygon into triangles.
std::vector<std::array<Vector2, 3>> ear_clip(std::vector<Vector2> poly) {
  std::vector<std::array<Vector2, 3>> tris;
  auto cross = [](const Vector2& a, const Vector2& b) { return a.x() * b.y() - a.y() * b.x(); };
  int guard = 0;
  while (poly.size() > 3) {
    const int m = static_cast<int>(poly.size());
    bool clipped = false;
    for (int i = 0; i < m; ++i) {
      const Vector2& prev = poly[(i + m - 1) % m];
      const Vector2& cur = poly[i];
      const Vector2& next = poly[(i + 1) % m];
      if (cross(cur - prev, next - cur) <= 0.0) continue;  // reflex
      bool ear = true;
      for (int j = 0; j < m && ear; ++j) {
        if (j == i || j == (i + m - 1) % m || j == (i + 1) % m) continue;
        const std::vector<Vector2> tri{prev, cur, next};
        if (point_in_polygon(tri, poly[j])) ear = false;
      }
      if (!ear) continue;
      tris.push_back({prev, cur, next});
      poly.erase(poly.begin() + i);
      clipped = true;
      break;
    }
    if (!clipped || ++guard > 10000)
      throw TriangulationFailure("ear clipping failed; polygon may be self-intersecting");
  }
  tris.push_back({poly[0], poly[1], poly[2]});
  return tris;
}

}  // namespace

PolygonRule polygon_rule(const ElementGeometry& geom, int degree) {
  if (degree < 0) throw DomainError("polygon rule needs degree >= 0");
  PolygonRule rule;
  rule.degree = degree;
  const int m = geom.n_vertices();
  bool fan_ok = true;
  for (int i = 0; i < m; ++i) {
    const Vector2 a = geom.edge_start(i) - geom.centroid;
    const Vector2 b = geom.edge_end(i) - geom.centroid;
    if (a.x() * b.y() - a.y() * b.x() <= 0.0) {
      fan_ok = false;
      break;
    }
  }
  if (fan_ok) {
    for (int i = 0; i < m; ++i)
      append_triangle_rule(rule, geom.centroid, geom.edge_start(i), geom.edge_end(i), degree);
  } else {
    for (const auto& tri : ear_clip(geom.vertex))
      append_triangle_rule(rule, tri[0], tri[1], tri[2], degree);
  }
  return rule;
}

std::vector<double> integrate_monomials(const ElementGeometry& geom, int k) {
  const MonomialBasis basis(2 * k, geom.centroid, geom.diameter);
  const PolygonRule rule = polygon_rule(geom, 2 * k);
  std::vector<double> result(basis.size(), 0.0);
  for (int q = 0; q < rule.size(); ++q) {
    const VectorX vals = basis.eval(rule.point[q]);
    for (int b = 0; b < basis.size(); ++b) result[b] += rule.weight[q] * vals[b];
  }
  return result;
}

}  // namespace vem
