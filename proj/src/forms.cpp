#include "vem/forms.hpp"

namespace vem {

namespace {

MatrixX block_diag2(const MatrixX& m) {
  const auto n = m.rows();
  MatrixX out = MatrixX::Zero(2 * n, 2 * n);
  out.topLeftCorner(n, n) = m;
  out.bottomRightCorner(n, n) = m;
  return out;
}

}  // namespace

StabilizerMatrices stabilizer_matrices(const ElementOperators& ops) {
  const int n = ops.n_dofs;
  return {MatrixX::Identity(n, n), ops.geom.area * MatrixX::Identity(n, n),
          MatrixX::Identity(n, n)};
}

MatrixX local_a(const ElementOperators& ops, double mu) {
  const int n = ops.n_dofs;
  if (mu == 0.0) return MatrixX::Zero(2 * n, 2 * n);
  const int n_km1 = monomial_count(ops.k - 1);
  const MatrixX h_km1 = ops.tables.mass.topLeftCorner(n_km1, n_km1);
  MatrixX consistency = MatrixX::Zero(n, n);
  for (int d = 0; d < 2; ++d)
    consistency += ops.pi0_grad_km1[d].transpose() * h_km1 * ops.pi0_grad_km1[d];
  const MatrixX fluct = MatrixX::Identity(n, n) - ops.hat_nabla_k;
  const MatrixX scalar = consistency + fluct.transpose() * fluct;
  return mu * block_diag2(scalar);
}

MatrixX local_b(const ElementOperators& ops) {
  const int n = ops.n_dofs;
  const int n_km1 = monomial_count(ops.k - 1);
  MatrixX div(n_km1, 2 * n);
  div.leftCols(n) = ops.pi0_grad_km1[0];
  div.rightCols(n) = ops.pi0_grad_km1[1];
  return div.transpose() * ops.tables.mass.topRows(n_km1) * ops.pi0_k;
}

MatrixX local_c_skew(const ElementOperators& ops, const VectorField& wind) {
  const int n = ops.n_dofs;
  const int n_k = ops.basis.size();
  const PolygonRule& rule = ops.interior_rule(2 * ops.k + 4);

  // W(a,b) = int (grad m_a . B) m_b
  MatrixX w_mat = MatrixX::Zero(n_k, n_k);
  for (int q = 0; q < rule.size(); ++q) {
    const Vector2 b = wind(rule.point[q]);
    const MatrixX g = ops.basis.eval_gradient(rule.point[q]);
    const VectorX m = ops.basis.eval(rule.point[q]);
    const VectorX gb = g * b;
    w_mat += rule.weight[q] * gb * m.transpose();
  }
  MatrixX scalar = ops.pi0_k.transpose() * w_mat.transpose() * ops.pi0_k;

  // boundary correction: int_{dE} (B.n) (w - Pi0 w) (Pi0 z)
  for (const auto& ed : ops.edge) {
    const int q = ed.rule.size();
    const MatrixX proj_vals = ed.mono * ops.pi0_k;  // q x N
    MatrixX weighted = proj_vals;
    for (int i = 0; i < q; ++i)
      weighted.row(i) *= ed.rule.weight[i] * wind(ed.rule.point[i]).dot(ed.normal);
    scalar += weighted.transpose() * (ed.trace - proj_vals);
  }

  const MatrixX full = block_diag2(scalar);
  return 0.5 * (full - full.transpose());
}

MatrixX local_c_hat(const ElementOperators& ops, const VectorField& wind) {
  const int n_k = ops.basis.size();
  const int n_km1 = monomial_count(ops.k - 1);
  const PolygonRule& rule = ops.interior_rule(2 * ops.k + 4);

  // Wd(a,b) = int m^{k-1}_a B_d m^k_b
  MatrixX wx = MatrixX::Zero(n_km1, n_k), wy = MatrixX::Zero(n_km1, n_k);
  for (int q = 0; q < rule.size(); ++q) {
    const Vector2 b = wind(rule.point[q]);
    const VectorX m = ops.basis.eval(rule.point[q]);
    wx += rule.weight[q] * b.x() * m.head(n_km1) * m.transpose();
    wy += rule.weight[q] * b.y() * m.head(n_km1) * m.transpose();
  }
  const MatrixX scalar =
      ops.pi0_k.transpose() *
      (wx.transpose() * ops.pi0_grad_km1[0] + wy.transpose() * ops.pi0_grad_km1[1]);
  const MatrixX full = block_diag2(scalar);
  return 0.5 * (full - full.transpose());
}

MatrixX local_d(const ElementOperators& ops, double gamma) {
  const int n = ops.n_dofs;
  if (gamma == 0.0) return MatrixX::Zero(2 * n, 2 * n);
  const MatrixX fluct = MatrixX::Identity(n, n) - ops.hat0_k;
  const MatrixX scalar = ops.pi0_k.transpose() * ops.tables.mass * ops.pi0_k +
                         ops.geom.area * fluct.transpose() * fluct;
  return gamma * block_diag2(scalar);
}

VectorX local_load(const ElementOperators& ops, const VectorField& f) {
  const int n = ops.n_dofs;
  const int n_k = ops.basis.size();
  const PolygonRule& rule = ops.interior_rule(2 * ops.k + 4);
  VectorX fm1 = VectorX::Zero(n_k), fm2 = VectorX::Zero(n_k);
  for (int q = 0; q < rule.size(); ++q) {
    const Vector2 fv = f(rule.point[q]);
    const VectorX m = ops.basis.eval(rule.point[q]);
    fm1 += rule.weight[q] * fv.x() * m;
    fm2 += rule.weight[q] * fv.y() * m;
  }
  VectorX out(2 * n);
  out.head(n) = ops.pi0_k.transpose() * fm1;
  out.tail(n) = ops.pi0_k.transpose() * fm2;
  return out;
}

VectorX local_mean(const ElementOperators& ops) {
  return ops.pi0_k.transpose() * ops.tables.mass.row(0).transpose();
}

}  // namespace vem
