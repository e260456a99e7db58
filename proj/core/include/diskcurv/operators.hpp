#pragma once

#include <vector>

#include "diskcurv/field.hpp"

namespace diskcurv {

/// Second-order finite-difference polar Laplacian u_rr + u_r/r + u_theta/r^2
/// in conservative (flux) form. The ghost value at r=0 is the angular mean of
/// the first ring; theta is periodic. The boundary ring uses a one-sided
/// non-conservative stencil (boundary rows belong to the Robin condition,
/// not to the Laplacian).
ScalarField laplacian(const ScalarField& u);

/// Outward normal derivative at r=1, one-sided second order:
/// (3 u_N - 4 u_{N-1} + u_{N-2}) / (2 dr). Exact for quadratics in r.
BoundaryField normal_derivative(const ScalarField& u);

/// |grad u|^2 = u_r^2 + u_theta^2/r^2 with centered differences
/// (one-sided at r=1, ring-mean ghost at the pole).
ScalarField gradient_sq(const ScalarField& u);

/// Integral over the disk of f r dr dtheta: trapezoid in theta, trapezoid
/// with pole-cell extrapolation in r. Fixed-order compensated summation.
double integrate_disk(const ScalarField& f);

/// Integral over the boundary circle: periodic trapezoid rule,
/// (2 pi / n_theta) * sum f_i.
double integrate_boundary(const BoundaryField& f);

/// Radial quadrature weights w_j of integrate_disk: the disk integral is
/// sum_j sum_i w_j dtheta f(j,i). The pole-corrected first weight equals
/// r_0 * dr exactly, interior rings carry r_j * dr, the boundary ring dr/2.
std::vector<double> radial_weights(const Grid& g);

/// Discrete Dirichlet bilinear form D(u,v) ~ integral of grad u . grad v.
/// Face-based (FEM-style) and symmetric; its exact gradient reproduces the
/// flux-form Laplacian on interior rings and the variational Robin flux on
/// the boundary ring. The energy and residual modules share this form so the
/// residual is the exact discrete gradient of the energy.
double dirichlet_form(const ScalarField& u, const ScalarField& v);

/// Gradient of u -> 0.5*D(u,u): returns the vector A*u on the full node set
/// (same layout as ScalarField::data).
std::vector<double> dirichlet_grad(const ScalarField& u);

/// Compensated (Kahan) left-to-right summation; bitwise reproducible.
double compensated_sum(const std::vector<double>& terms);

}  // namespace diskcurv
