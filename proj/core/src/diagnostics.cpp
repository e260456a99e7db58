#include "diskcurv/diagnostics.hpp"

#include <cmath>
#include <numbers>

#include "diskcurv/operators.hpp"

namespace diskcurv {

namespace {
constexpr double kPi = std::numbers::pi;
}

double gauss_bonnet_residual(const ScalarField& u, const ScalarField& K_eff,
                             const BoundaryField& h_eff, double chi_target) {
  require_same_grid(u.grid, K_eff.grid, "gauss_bonnet_residual");
  require_same_grid(u.grid, h_eff.grid, "gauss_bonnet_residual");
  ScalarField a(u.grid);
  for (size_t t = 0; t < u.data.size(); ++t) a.data[t] = K_eff.data[t] * std::exp(u.data[t]);
  BoundaryField b(u.grid);
  const int jb = u.grid.boundary_ring();
  for (int i = 0; i < u.grid.n_theta; ++i) b.at(i) = h_eff.at(i) * std::exp(0.5 * u.at(jb, i));
  return integrate_disk(a) + integrate_boundary(b) - chi_target;
}

double lebedev_milin_gap(const ScalarField& u) {
  const double dir = integrate_disk(gradient_sq(u));
  const BoundaryField tr = boundary_trace(u);
  const double lin = integrate_boundary(tr);
  BoundaryField eu(u.grid);
  for (int i = 0; i < u.grid.n_theta; ++i) eu.at(i) = std::exp(0.5 * tr.at(i));
  const double mass = integrate_boundary(eu);
  const double lhs = 16.0 * kPi * std::log(mass / (2.0 * kPi));
  return dir + 4.0 * lin - lhs;
}

BlowUpCandidates blow_up_candidates(const DeficitProfile& D, double tol, double tol_d) {
  BlowUpCandidates out;
  const Grid& g = D.values.grid;
  for (int i = 0; i < g.n_theta; ++i) {
    const double d = D.values.at(i);
    const double dt = D.tangential_derivative.at(i);
    if (d >= 1.0 - tol) out.ge_one.push_back(g.theta(i));
    if (d > 1.0 + tol) out.s1_set.push_back(g.theta(i));
    if (std::abs(d - 1.0) <= tol && std::abs(dt) <= tol_d) out.s0_set.push_back(g.theta(i));
  }
  out.s0_empty = out.s0_set.empty();
  return out;
}

double liouville_residual(const MoebiusParams& params, const Grid& grid) {
  using cplx = std::complex<double>;
  const cplx a = params.a;
  const double rho = params.rho;
  const cplx phase = std::polar(1.0, params.alpha);

  ScalarField ut(grid);
  for (int j = 0; j < grid.n_r; ++j) {
    const double r = grid.radius(j);
    for (int i = 0; i < grid.n_theta; ++i) {
      const cplx z = std::polar(r, grid.theta(i));
      const cplx denom = 1.0 - std::conj(a) * z;
      const cplx gz = rho * phase * (z - a) / denom;
      const double absg = std::abs(gz);
      if (absg >= 1.0) {
        throw Error(ErrorCode::ImageLeavesDisk, "|g| must stay below 1 on the closed disk");
      }
      const cplx gprime = rho * phase * (1.0 - std::norm(a)) / (denom * denom);
      const double one_m = 1.0 - absg * absg;
      ut.at(j, i) = std::log(4.0 * std::norm(gprime) / (one_m * one_m));
    }
  }
  const ScalarField lap = laplacian(ut);
  double res = 0.0;
  // skip the pole-closure ring (its ring-mean ghost is O(1) on radial data)
  for (int j = 1; j < grid.n_r - 1; ++j) {
    for (int i = 0; i < grid.n_theta; ++i) {
      res = std::max(res, std::abs(-lap.at(j, i) + 2.0 * std::exp(ut.at(j, i))));
    }
  }
  return res;
}

double geodesic_curvature_circle(double r) {
  if (!(r > 0.0 && r < 1.0))
    throw Error(ErrorCode::OutOfRange, "geodesic_curvature_circle needs 0 < r < 1");
  return (r * r + 1.0) / (2.0 * r);
}

ChiQuantizationReport chi_quantization_check(const std::vector<SolutionRecord>& records) {
  if (records.empty())
    throw Error(ErrorCode::InvalidOptions, "chi_quantization_check needs at least one record");
  ChiQuantizationReport rep;
  for (const SolutionRecord& r : records) rep.chi.push_back(r.chi_eps);
  rep.limit_estimate = rep.chi.back();
  rep.nearest_multiple = static_cast<int>(std::lround(rep.limit_estimate / (2.0 * kPi)));
  rep.distance_to_lattice = std::abs(rep.limit_estimate - 2.0 * kPi * rep.nearest_multiple);
  return rep;
}

}  // namespace diskcurv
