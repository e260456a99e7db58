#pragma once

#include <complex>
#include <vector>

#include "diskcurv/curvature.hpp"
#include "diskcurv/field.hpp"
#include "diskcurv/solvers.hpp"

namespace diskcurv {

/// int K_eff e^u + oint h_eff e^{u/2} - chi_target. chi_target is 2 pi for
/// the unperturbed problem and int K_tilde + oint h_tilde along the
/// eps-family.
double gauss_bonnet_residual(const ScalarField& u, const ScalarField& K_eff,
                             const BoundaryField& h_eff, double chi_target);

/// Gap of the normalized Lebedev-Milin inequality
///   16 pi log( (1/2pi) oint e^{u/2} ) <= int |grad u|^2 + 4 oint u,
/// returned as RHS - LHS. Zero for constants, nonnegative for smooth u.
double lebedev_milin_gap(const ScalarField& u);

/// Boundary angle sets classifying blow-up candidates by deficit thresholds.
struct BlowUpCandidates {
  std::vector<double> ge_one;  // D >= 1 - tol
  std::vector<double> s1_set;  // D > 1 + tol
  std::vector<double> s0_set;  // |D - 1| <= tol and |D_tau| <= tol_d
  bool s0_empty = true;
};
BlowUpCandidates blow_up_candidates(const DeficitProfile& D, double tol, double tol_d);

/// Disk automorphism composed with a scaling:
/// g(z) = rho e^{i alpha} (z - a)/(1 - conj(a) z).
struct MoebiusParams {
  std::complex<double> a = 0.0;
  double rho = 0.9;
  double alpha = 0.0;
};

/// Builds u~ = log( 4|g'|^2 / (1-|g|^2)^2 ) on the grid and returns the
/// sup-norm of -Delta u~ + 2 e^{u~} over the rings between the pole closure
/// and the boundary (the closed form solves -Delta u = -2 e^u exactly).
double liouville_residual(const MoebiusParams& params, const Grid& grid);

/// Geodesic curvature (r^2+1)/(2r) of the Euclidean circle of radius r in
/// the Poincare disk; > 1 for every r in (0,1).
double geodesic_curvature_circle(double r);

struct ChiQuantizationReport {
  std::vector<double> chi;          // chi_eps per record
  double limit_estimate = 0.0;      // last chi in the family
  int nearest_multiple = 0;         // j with chi ~ 2 pi j
  double distance_to_lattice = 0.0;
};
ChiQuantizationReport chi_quantization_check(const std::vector<SolutionRecord>& records);

}  // namespace diskcurv
