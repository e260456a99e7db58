#pragma once

#include <array>
#include <vector>

#include "diskcurv/curvature.hpp"
#include "diskcurv/field.hpp"

namespace diskcurv {

/// Parameters of the boundary-bubble test functions. KPoint places k bubble
/// centers at q_i = (1 + r_off)(cos(base_angle + 2 pi i/k), sin(...)) just
/// outside the disk; Radial is the O(2)-symmetric bubble with pole at
/// |x| = mu > 1.
struct BubbleParams {
  enum class Placement { KPoint, Radial };
  Placement placement = Placement::Radial;
  double mu = 2.0;
  double r_off = 0.2;     // KPoint offset distance; requires mu * r_off > 1
  int k = 1;              // number of bubbles
  double base_angle = 0.0;
};

/// phi_{mu,q}(x) = log( 4 mu^2 / (mu^2 d^2(x,q) - 1)^2 ), d = |x - q|.
ScalarField bubble_phi(const BubbleParams& params, std::array<double, 2> q, const Grid& grid);

/// Phi_{mu,k} = log sum_i e^{phi_{mu,q_i}} evaluated stably (max-shift).
ScalarField bubble_sum_Phi(const BubbleParams& params, const Grid& grid);

/// Boundary trace of Phi_{mu,k} (cheap evaluation on the r=1 ring only).
BoundaryField bubble_sum_Phi_boundary(const BubbleParams& params, const Grid& grid);

/// phi_mu(x) = 2 log( 2 mu / (mu^2 - |x|^2) ), mu > 1.
ScalarField radial_bubble(double mu, const Grid& grid);

/// tilde f = f - log |K|; requires K < 0 on the closed disk.
ScalarField tilde(const ScalarField& f, const ScalarField& K);

/// Predicted leading values of the appendix integrals.
/// KPoint (one-sided bounds, s = sqrt(mu^2 r_off^2 - 1)):
///   grad_sq ~ 8 k pi / s, area ~ 2 k pi mu r_off / s,
///   boundary_weighted >= D_min 2 k pi / s.
/// Radial (exact closed forms):
///   grad_sq = 16 pi/(mu^2(mu^2-1)), area = 4 pi/(mu^2-1),
///   boundary = 4 pi mu/(mu^2-1), boundary_log = 4 pi log(2 mu/(mu^2-1)).
struct OracleReport {
  bool radial = true;
  double grad_sq = 0.0;
  double area = 0.0;
  double boundary = 0.0;
  double boundary_log = 0.0;  // radial only
};
OracleReport appendix_oracles(const BubbleParams& params, double D_min);

struct BubbleScanRow {
  double mu = 0.0;
  double I_value = 0.0;
  double dirichlet = 0.0;
  double area_term = 0.0;
  double linear_boundary = 0.0;
  double curvature_boundary = 0.0;
  double boundary_length = 0.0;  // oint e^{phi~/2}
  double predicted = 0.0;        // leading term of I
  double min_deficit_cap = 0.0;
};

/// Evaluates I(phi~_mu) and oint e^{phi~_mu/2} for each mu in the schedule.
/// Refuses grids whose boundary layer at the smallest mu is resolved by
/// fewer than 8 nodes (the error message reports the required resolution).
std::vector<BubbleScanRow> unboundedness_scan(const ScalarField& K, const BoundaryField& h,
                                              const BubbleParams& params_template,
                                              const std::vector<double>& mu_schedule);

/// Smallest grid resolution that keeps the concentration layer of the bubble
/// at parameter mu resolved by >= 8 nodes (n_r for Radial, n_theta for
/// KPoint).
int required_resolution(const BubbleParams& params, double mu);

}  // namespace diskcurv
