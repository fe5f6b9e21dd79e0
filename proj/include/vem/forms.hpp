// Element-local discrete bilinear forms of the stabilized scheme.
//
// Velocity matrices are (2 N_E x 2 N_E), component-major: DOFs of the first
// component, then DOFs of the second. Matrix entry (i,j) is the form applied
// to (trial phi_j, test phi_i), matching rows = tests in the global system.

#ifndef VEM_FORMS_HPP
#define VEM_FORMS_HPP

#include "vem/vemspace.hpp"

namespace vem {

/// The unconjugated stabilizer cores: S_nabla = I, S_0 = |E| I, S_p = I
/// (dofi-dofi; the |E| factor gives the L2-like scaling). Callers conjugate
/// them with the matching DOF-space fluctuation (I - hat projector).
struct StabilizerMatrices {
  MatrixX s_nabla;
  MatrixX s0;
  MatrixX sp;
};

StabilizerMatrices stabilizer_matrices(const ElementOperators& ops);

/// Diffusion: mu [ (Pi0_{k-1} grad w : Pi0_{k-1} grad z) + S_nabla fluctuation ].
MatrixX local_a(const ElementOperators& ops, double mu);

/// Velocity-pressure coupling (2N_E x N_E): b_h(z, q) with z = column DOF.
MatrixX local_b(const ElementOperators& ops);

/// Skew-symmetrized convective form with the boundary-corrected interior form.
MatrixX local_c_skew(const ElementOperators& ops, const VectorField& wind);

/// Skew-symmetrized alternative convective form (no boundary term,
/// gradient projected instead of differentiated).
MatrixX local_c_hat(const ElementOperators& ops, const VectorField& wind);

/// Reaction: gamma [ (Pi0_k w . Pi0_k z) + S_0 fluctuation ].
MatrixX local_d(const ElementOperators& ops, double gamma);

/// Load vector (2N_E): (f, Pi0_k z) per component.
VectorX local_load(const ElementOperators& ops, const VectorField& f);

/// Integral of every local scalar DOF function over the element,
/// computed through its L2 projection (exact on the enhanced space).
VectorX local_mean(const ElementOperators& ops);

}  // namespace vem

#endif
