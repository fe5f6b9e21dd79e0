// Local-projection stabilization terms and their parameter scalings.

#ifndef VEM_LPS_HPP
#define VEM_LPS_HPP

#include "vem/vemspace.hpp"

namespace vem {

/// tau_{1,E} = c1 h_E, tau_{2,E} = c2, tau_{3,E} = c3 h_E^2.
struct StabilizationParams {
  double c1 = 1.0;
  double c2 = 1.0;
  double c3 = 1.0;

  double tau1(double h) const { return c1 * h; }
  double tau2(double) const { return c2; }
  double tau3(double h) const { return c3 * h * h; }
};

/// Velocity fluctuation penalty (2N_E x 2N_E):
/// tau1 B_E^2 S_nabla((I - PiNabla_{k-1}) w, (I - PiNabla_{k-1}) z).
/// B_E is the sup of |B| sampled at interior and edge quadrature points.
MatrixX local_l1(const ElementOperators& ops, const VectorField& wind,
                 const StabilizationParams& params);

/// Mass-equation penalty: tau2 [ projected-divergence Gram
/// + S_nabla((I - PiNabla_k) w, (I - PiNabla_k) z) ].
MatrixX local_l2(const ElementOperators& ops, const StabilizationParams& params);

/// Pressure penalty (N_E x N_E): tau3 [ (rhat grad p, rhat grad q)
/// + S_p((I - PiNabla_{k-1}) p, (I - PiNabla_{k-1}) q) ],
/// rhat = Pi0_k - Pi0_{k-1} applied to the gradient.
MatrixX local_l3(const ElementOperators& ops, const StabilizationParams& params);

/// Sampled sup-norm of the convective field over the element.
double wind_sup_norm(const ElementOperators& ops, const VectorField& wind);

}  // namespace vem

#endif
