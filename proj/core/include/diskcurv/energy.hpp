#pragma once

#include "diskcurv/curvature.hpp"
#include "diskcurv/field.hpp"

namespace diskcurv {

/// Coefficients of the eps-perturbed problem
///   -Delta u + 2*K_tilde = 2*K_eff e^u          in the disk,
///    du/dnu + 2*h_tilde  = 2*h_eff e^{u/2}      on the boundary,
/// derived from the Euler-Lagrange equation of I_eps = I + eps*J and
/// normalized by (1+2 eps):
///   K_tilde = -eps|K| / (2(1+2 eps)),  K_eff = -|K|(1+eps/2)/(1+2 eps),
///   h_tilde = 1/(1+2 eps),             h_eff = h/(1+2 eps).
/// eps = 0 recovers the unperturbed problem (K_tilde = 0, h_tilde = 1).
struct PerturbedCoeffs {
  double eps = 0.0;
  ScalarField K_tilde;
  ScalarField K_eff;
  double h_tilde = 1.0;
  BoundaryField h_eff;
};

struct EnergyReport {
  double I_value = 0.0;
  double dirichlet = 0.0;           // 0.5 * int |grad u|^2
  double area_term = 0.0;           // -2 int K e^u
  double linear_boundary = 0.0;     // 2 oint u
  double curvature_boundary = 0.0;  // -4 oint h e^{u/2}
  bool overflow = false;
};

/// Residual of the perturbed problem. interior holds
/// -Delta u + 2 K_tilde - 2 K_eff e^u on rings 0..n_r-2 (the boundary ring
/// row is zero); boundary holds the variational Robin residual on the r=1
/// ring. The pair is exactly the gradient of the discrete perturbed energy
/// in the quadrature pairing (see residual_pairing).
struct Residual {
  ScalarField interior;
  BoundaryField boundary;

  double interior_norm() const {
    double m = 0.0;
    const int jb = interior.grid.boundary_ring();
    for (int j = 0; j < jb; ++j)
      for (int i = 0; i < interior.grid.n_theta; ++i)
        m = std::max(m, std::abs(interior.at(j, i)));
    return m;
  }
  double boundary_norm() const { return boundary.max_abs(); }
  double combined_norm() const { return std::max(interior_norm(), boundary_norm()); }
};

/// exp with the exponent clamped at 250; sets *overflow when clamped.
double clamped_exp(double x, bool* overflow);

/// The energy functional
///   I(u) = int(0.5|grad u|^2 - 2 K e^u) + oint(2u - 4 h e^{u/2}),
/// with the Dirichlet part computed through the discrete Dirichlet form.
EnergyReport energy_I(const ScalarField& u, const ScalarField& K, const BoundaryField& h);

/// J(u) = int |grad u|^2 + |K|(e^u - u); coercive, >= int |K|.
double energy_J(const ScalarField& u, const ScalarField& K, bool* overflow = nullptr);

PerturbedCoeffs perturbed_coeffs(const ScalarField& K, const BoundaryField& h, double eps);

/// Normalized perturbed energy I_eps(u)/(1+2 eps); its exact discrete
/// gradient is residual(u, c) under residual_pairing. At eps = 0 this is
/// exactly I(u).
double perturbed_energy(const ScalarField& u, const PerturbedCoeffs& c,
                        bool* overflow = nullptr);

Residual residual(const ScalarField& u, const PerturbedCoeffs& c);

/// Quadrature pairing <res, v> = int interior*v + oint boundary*v. The
/// directional derivative of perturbed_energy at u along v equals this
/// number to round-off; the derivative of I_eps is (1+2 eps) times it.
double residual_pairing(const Residual& res, const ScalarField& v);

/// Q(psi) = I_eps''(u)(psi,psi)
///        = (1+2 eps) [ int(|grad psi|^2 - 2 psi^2 K_eff e^u)
///                      - oint psi^2 h_eff e^{u/2} ].
/// For eps = 0 this is the second variation of I.
double quadratic_form_Q(const ScalarField& u, const PerturbedCoeffs& c, const ScalarField& psi);

/// chi_eps = int K_tilde + oint h_tilde (equals 2 pi at eps = 0).
double chi_of_coeffs(const PerturbedCoeffs& c);

}  // namespace diskcurv
