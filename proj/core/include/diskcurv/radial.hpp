#pragma once

#include <optional>
#include <vector>

#include "diskcurv/curvature.hpp"
#include "diskcurv/field.hpp"

namespace diskcurv {

/// Radial restriction of the perturbed coefficients. K must be radial
/// (constant or polynomial in r^2) and nonpositive.
struct RadialCoeffs {
  double eps = 0.0;
  std::vector<double> K_poly;  // K(r) = sum K_poly[m] (r^2)^m
  double h_tilde = 1.0;
  double h_eff1 = 1.0;  // h_eff at r = 1

  double K(double r) const;
  double K_prime(double r) const;
  double K_eff(double r) const;
  double K_eff_prime(double r) const;
  double K_tilde(double r) const;
  // r^2-series coefficients at the origin, used by the pole expansion.
  double K_eff0() const;
  double K_eff_r2() const;
  double K_tilde0() const;
  double K_tilde_r2() const;
};

RadialCoeffs make_radial_coeffs(const InteriorCurvature& K_def, double h_at_1, double eps);

struct RadialProfile {
  std::vector<double> r_nodes;  // 0 = pole, last = 1
  std::vector<double> u;
  std::vector<double> u_prime;
  double a = 0.0;  // u(0)
  RadialCoeffs coeffs;
};

struct ShootResult {
  double u1 = 0.0;        // u(1)
  double up1 = 0.0;       // u'(1)
  double mismatch = 0.0;  // F(a) = u'(1) + 2 h_tilde - 2 h_eff(1) e^{u(1)/2}
  bool blew_up = false;
  double blowup_radius = 0.0;
  RadialProfile profile;
};

/// Integrates u'' + u'/r = 2 K_tilde(r) - 2 K_eff(r) e^u from r=0 with
/// u(0)=a, u'(0)=0 (classical RK4; series start over the first step because
/// the ODE is singular at the pole). Trajectories exceeding u=500 stop with
/// the blow-up sentinel (mismatch = +inf).
ShootResult shoot(double a, const RadialCoeffs& c, int n_steps);

struct RadialScanRow {
  double a = 0.0;
  double mismatch = 0.0;
  std::optional<double> blowup_radius;
};

struct RadialSolveResult {
  std::vector<RadialProfile> roots;
  std::vector<RadialScanRow> scan;
  double min_abs_mismatch = 0.0;  // over non-blow-up scan samples
  double min_mismatch = 0.0;
};

/// Scans F(a) on a uniform grid over [a_lo, a_hi], brackets sign changes and
/// refines each root by bisection+secant to |F| <= 1e-10.
RadialSolveResult solve_radial(const RadialCoeffs& c, double a_lo, double a_hi, int n_samples,
                               int n_steps);

/// Pohozaev-type identity A2 - A1 from multiplying the radial equation by u'
/// and integrating; vanishes (to quadrature error) exactly on solutions.
double pohozaev_residual(const RadialProfile& p);

/// Closed-form solution u = 2 log(2 mu/(mu^2 - r^2)) of the unperturbed
/// problem with K = -1, h = h0 > 1, where mu = h0 + sqrt(h0^2 - 1).
struct ExactHyperbolic {
  double mu = 0.0;
  RadialProfile profile;
};
ExactHyperbolic exact_hyperbolic(double h0, int n_steps);

/// 2 pi int K_eff e^u r dr + 2 pi h_eff(1) e^{u(1)/2} - chi_eps for a radial
/// profile; the radial specialization of Gauss-Bonnet.
double radial_gauss_bonnet_residual(const RadialProfile& p);

/// Injects a radial profile onto the polar grid (constant along rings).
/// Profile nodes must contain the grid radii; values are interpolated
/// linearly (exact when n_steps is a multiple of n_r).
ScalarField inject_radial(const RadialProfile& p, const Grid& g);

}  // namespace diskcurv
