#pragma once

#include <functional>

#include "symthermo/hamiltonian.hpp"
#include "symthermo/phase.hpp"

namespace symthermo {

/// omega(u, v) = sum_i (u.dq_i v.dp_i - u.dp_i v.dq_i) for vectors at a
/// shared base point.
double canonical_pairing(const TangentVector& u, const TangentVector& v);

/// The flow direction of H at x: (dq, dp) = (dH/dp, -dH/dq).
TangentVector hamiltonian_field(const Hamiltonian& H, const PhasePoint& x);

/// Derivative of H along u at u's base point; vanishes up to round-off when
/// u = hamiltonian_field(H, base).
double directional_derivative(const Hamiltonian& H, const TangentVector& u);

/// The canonical antisymmetric matrix [[0, I], [-I, 0]] of size 2n x 2n.
Mat canonical_omega(Eigen::Index n);

using FlowMap = std::function<PhasePoint(const PhasePoint&)>;

/// Max-norm of J^T Omega J - Omega where J is the central-finite-difference
/// Jacobian of the flow map at x, per-coordinate step h * max(1, |x_i|).
/// Zero exactly when the map is symplectic; in practice bounded by FD error.
double symplectic_defect(const FlowMap& flow, const PhasePoint& x, double h);

/// Central-finite-difference gradient with relative steps
/// h_i = h * max(1, |x_i|). Cross-check oracle for the dual derivatives.
Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x, double h = 1e-6);

}  // namespace symthermo
