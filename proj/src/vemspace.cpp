#include "vem/vemspace.hpp"

#include <cmath>
#include <map>

namespace vem {

const QuadratureRule1D& edge_node_rule(int k) {
  static std::map<int, QuadratureRule1D> cache;
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, gauss_lobatto(k + 1)).first;
  return it->second;
}

DofLayout build_dof_layout(const PolyMesh& mesh, int k) {
  if (k < 1) throw DomainError("VEM order k must be >= 1");
  DofLayout layout;
  layout.k = k;
  const int n_mom = monomial_count(k - 2);
  layout.edge_dof_start = mesh.n_vertices();
  layout.moment_dof_start = layout.edge_dof_start + mesh.n_edges() * (k - 1);
  layout.n_global = layout.moment_dof_start + mesh.n_cells() * n_mom;

  layout.dof_kind.assign(layout.n_global, DofKind::moment);
  layout.dof_point.assign(layout.n_global, Vector2::Zero());
  layout.boundary_dof.assign(layout.n_global, false);

  for (int v = 0; v < mesh.n_vertices(); ++v) {
    layout.dof_kind[v] = DofKind::vertex;
    layout.dof_point[v] = mesh.vertices[v];
    layout.boundary_dof[v] = mesh.boundary_vertex[v];
  }
  const QuadratureRule1D& nodes = edge_node_rule(k);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const Vector2 a = mesh.vertices[mesh.edges[e].a];
    const Vector2 b = mesh.vertices[mesh.edges[e].b];
    for (int j = 0; j < k - 1; ++j) {
      const int g = layout.edge_dof_start + e * (k - 1) + j;
      const double t = 0.5 * (1.0 + nodes.point[j + 1]);
      layout.dof_kind[g] = DofKind::edge;
      layout.dof_point[g] = a + t * (b - a);
      layout.boundary_dof[g] = mesh.boundary_edge[e];
    }
  }

  layout.cell_dofs.resize(mesh.n_cells());
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const auto& cell = mesh.cells[c];
    const int nv = static_cast<int>(cell.size());
    auto& dofs = layout.cell_dofs[c];
    dofs.reserve(nv * k + n_mom);
    for (int v : cell) dofs.push_back(v);
    for (int i = 0; i < nv; ++i) {
      const int e = mesh.cell_edges[c][i];
      const bool fwd = mesh.cell_edge_forward(c, i);
      for (int j = 0; j < k - 1; ++j) {
        const int jj = fwd ? j : (k - 2 - j);
        dofs.push_back(layout.edge_dof_start + e * (k - 1) + jj);
      }
    }
    for (int a = 0; a < n_mom; ++a) dofs.push_back(layout.moment_dof_start + c * n_mom + a);
  }
  return layout;
}

namespace {

// Lagrange basis on the Gauss-Lobatto nodes, evaluated at points s.
MatrixX lagrange_eval(const std::vector<double>& nodes, const std::vector<double>& s) {
  const int n = static_cast<int>(nodes.size());
  std::vector<double> bary(n, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (j != i) bary[i] /= (nodes[i] - nodes[j]);
  MatrixX out(s.size(), n);
  for (std::size_t q = 0; q < s.size(); ++q) {
    int hit = -1;
    for (int i = 0; i < n; ++i)
      if (std::abs(s[q] - nodes[i]) < 1e-14) hit = i;
    if (hit >= 0) {
      out.row(q).setZero();
      out(q, hit) = 1.0;
      continue;
    }
    double denom = 0.0;
    for (int i = 0; i < n; ++i) denom += bary[i] / (s[q] - nodes[i]);
    for (int i = 0; i < n; ++i) out(q, i) = (bary[i] / (s[q] - nodes[i])) / denom;
  }
  return out;
}

double condest(const MatrixX& m) {
  Eigen::JacobiSVD<MatrixX> svd(m);
  const auto& sv = svd.singularValues();
  return sv[sv.size() - 1] <= 0.0 ? std::numeric_limits<double>::infinity()
                                  : sv[0] / sv[sv.size() - 1];
}

}  // namespace

const PolygonRule& ElementOperators::interior_rule(int degree) const {
  for (const auto& r : rule_cache_)
    if (r.degree == degree) return r;
  rule_cache_.push_back(polygon_rule(geom, degree));
  return rule_cache_.back();
}

ElementOperators build_projectors(const ElementGeometry& geom, int k) {
  const int n_k = monomial_count(k);
  const int n_km1 = monomial_count(k - 1);
  const int n_km2 = monomial_count(k - 2);
  const int nv = geom.n_vertices();
  const int n_dofs = nv * k + n_km2;

  ElementOperators ops;
  ops.k = k;
  ops.geom = geom;
  ops.basis = MonomialBasis(k, geom.centroid, geom.diameter);
  ops.tables = build_tables(ops.basis, geom);
  ops.n_dofs = n_dofs;

  // --- edge traces -------------------------------------------------------
  const QuadratureRule1D& nodes = edge_node_rule(k);
  const QuadratureRule1D edge_quad = gauss_legendre(k + 4);
  const MatrixX lagr = lagrange_eval(nodes.point, edge_quad.point);
  ops.edge.resize(nv);
  for (int e = 0; e < nv; ++e) {
    auto& ed = ops.edge[e];
    ed.rule = map_to_edge(edge_quad, geom.edge_start(e), geom.edge_end(e));
    ed.normal = geom.edge_normal[e];
    ed.local_dofs.resize(k + 1);
    ed.local_dofs[0] = e;
    for (int j = 0; j < k - 1; ++j) ed.local_dofs[1 + j] = nv + e * (k - 1) + j;
    ed.local_dofs[k] = (e + 1) % nv;
    ed.trace = MatrixX::Zero(edge_quad.size(), n_dofs);
    for (int q = 0; q < edge_quad.size(); ++q) {
      // Lagrange columns come in node order (-1, internals..., +1)
      ed.trace(q, ed.local_dofs[0]) = lagr(q, 0);
      for (int j = 0; j < k - 1; ++j) ed.trace(q, ed.local_dofs[1 + j]) = lagr(q, 1 + j);
      ed.trace(q, ed.local_dofs[k]) = lagr(q, k);
    }
    ed.mono = ops.basis.eval(ed.rule.point);
  }

  // --- D matrix -----------------------------------------------------------
  MatrixX& D = ops.dof_of_monomial;
  D = MatrixX::Zero(n_dofs, n_k);
  for (int v = 0; v < nv; ++v) D.row(v) = ops.basis.eval(geom.vertex[v]).transpose();
  for (int e = 0; e < nv; ++e) {
    const Vector2 a = geom.edge_start(e), b = geom.edge_end(e);
    for (int j = 0; j < k - 1; ++j) {
      const double t = 0.5 * (1.0 + nodes.point[j + 1]);
      D.row(nv + e * (k - 1) + j) = ops.basis.eval(a + t * (b - a)).transpose();
    }
  }
  if (n_km2 > 0)
    D.bottomRows(n_km2) = ops.tables.mass.topRows(n_km2) / geom.area;

  // boundary integrals of every DOF function against all monomials:
  // bnd_mono[j][a]  = int_{dE} phi_j m_a ds
  // bnd_gradn[j][a] = int_{dE} phi_j (grad m_a . n) ds
  // bnd_nx/ny       = int_{dE} phi_j m_a n_{x/y} ds
  MatrixX bnd_mono = MatrixX::Zero(n_dofs, n_k);
  MatrixX bnd_gradn = MatrixX::Zero(n_dofs, n_k);
  MatrixX bnd_nx = MatrixX::Zero(n_dofs, n_k);
  MatrixX bnd_ny = MatrixX::Zero(n_dofs, n_k);
  for (const auto& ed : ops.edge) {
    const int q = ed.rule.size();
    MatrixX wmono(q, n_k);
    for (int i = 0; i < q; ++i) wmono.row(i) = ed.rule.weight[i] * ed.mono.row(i);
    const MatrixX base = ed.trace.transpose() * wmono;
    bnd_mono += base;
    bnd_nx += base * ed.normal.x();
    bnd_ny += base * ed.normal.y();
    MatrixX gradn(q, n_k);
    for (int i = 0; i < q; ++i) {
      const MatrixX g = ops.basis.eval_gradient(ed.rule.point[i]);
      for (int a = 0; a < n_k; ++a)
        gradn(i, a) = ed.rule.weight[i] * (g(a, 0) * ed.normal.x() + g(a, 1) * ed.normal.y());
    }
    bnd_gradn += ed.trace.transpose() * gradn;
  }

  // --- H1 projectors ------------------------------------------------------
  auto build_pi_nabla = [&](int deg, MatrixX& out) {
    const int n = monomial_count(deg);
    MatrixX G = ops.tables.grad_gram.topLeftCorner(n, n);
    MatrixX B = MatrixX::Zero(n, n_dofs);
    for (int a = 1; a < n; ++a) {
      B.row(a) = bnd_gradn.col(a).transpose();
      for (int d = 0; d < n_km2; ++d) {
        const double c = ops.tables.laplace_map(d, a);
        if (c != 0.0) B(a, nv * k + d) -= c * geom.area;
      }
    }
    // first row: boundary average
    for (int a = 0; a < n; ++a) {
      double avg = 0.0;
      for (const auto& ed : ops.edge)
        for (int i = 0; i < ed.rule.size(); ++i) avg += ed.rule.weight[i] * ed.mono(i, a);
      G(0, a) = avg / geom.perimeter;
    }
    B.row(0) = bnd_mono.col(0).transpose() / geom.perimeter;
    if (condest(G) > 1e12)
      throw SingularProjector("energy-projector matrix is numerically singular");
    out = G.partialPivLu().solve(B);
    const double res = (G - B * D.leftCols(n)).norm() / G.norm();
    ops.projector_residual = std::max(ops.projector_residual, res);
    if (res > 1e-10)
      throw SingularProjector("projector identity G = B*D failed: residual " + std::to_string(res));
  };
  build_pi_nabla(k, ops.pi_nabla_k);
  build_pi_nabla(k - 1, ops.pi_nabla_km1);

  // --- moments and L2 projectors -----------------------------------------
  ops.moments = MatrixX::Zero(n_k, n_dofs);
  for (int a = 0; a < n_km2; ++a) ops.moments(a, nv * k + a) = geom.area;
  if (n_k > n_km2) {
    const MatrixX enhanced = ops.tables.mass * ops.pi_nabla_k;
    ops.moments.bottomRows(n_k - n_km2) = enhanced.bottomRows(n_k - n_km2);
  }
  if (condest(ops.tables.mass) > 1e12)
    throw SingularProjector("monomial mass matrix is numerically singular");
  const auto mass_lu = ops.tables.mass.partialPivLu();
  ops.pi0_k = mass_lu.solve(ops.moments);

  // gradient projections via integration by parts:
  // (d_x v, m_a) = -(v, d_x m_a) + int_{dE} v m_a n_x
  const MatrixX rx = bnd_nx.transpose() - ops.tables.dx_map.transpose() * ops.moments;
  const MatrixX ry = bnd_ny.transpose() - ops.tables.dy_map.transpose() * ops.moments;
  ops.pi0_grad_k[0] = mass_lu.solve(rx);
  ops.pi0_grad_k[1] = mass_lu.solve(ry);
  const auto mass_km1_lu = ops.tables.mass.topLeftCorner(n_km1, n_km1).partialPivLu();
  ops.pi0_grad_km1[0] = mass_km1_lu.solve(rx.topRows(n_km1));
  ops.pi0_grad_km1[1] = mass_km1_lu.solve(ry.topRows(n_km1));

  ops.hat_nabla_k = D * ops.pi_nabla_k;
  ops.hat_nabla_km1 = D.leftCols(n_km1) * ops.pi_nabla_km1;
  ops.hat0_k = D * ops.pi0_k;
  return ops;
}

VectorX interpolate(const ElementOperators& ops, const ScalarField& v) {
  const int nv = ops.geom.n_vertices();
  const int k = ops.k;
  const int n_km2 = monomial_count(k - 2);
  VectorX dofs(ops.n_dofs);
  for (int i = 0; i < nv; ++i) dofs[i] = v(ops.geom.vertex[i]);
  const QuadratureRule1D& nodes = edge_node_rule(k);
  for (int e = 0; e < nv; ++e) {
    const Vector2 a = ops.geom.edge_start(e), b = ops.geom.edge_end(e);
    for (int j = 0; j < k - 1; ++j) {
      const double t = 0.5 * (1.0 + nodes.point[j + 1]);
      dofs[nv + e * (k - 1) + j] = v(a + t * (b - a));
    }
  }
  if (n_km2 > 0) {
    const PolygonRule& rule = ops.interior_rule(2 * k + 4);
    VectorX mom = VectorX::Zero(n_km2);
    for (int q = 0; q < rule.size(); ++q) {
      const VectorX m = ops.basis.eval(rule.point[q]);
      mom += rule.weight[q] * v(rule.point[q]) * m.head(n_km2);
    }
    dofs.tail(n_km2) = mom / ops.geom.area;
  }
  return dofs;
}

}  // namespace vem
