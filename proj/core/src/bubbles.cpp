#include "diskcurv/bubbles.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "diskcurv/energy.hpp"
#include "diskcurv/operators.hpp"

namespace diskcurv {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::array<double, 2>> bubble_centers(const BubbleParams& p) {
  std::vector<std::array<double, 2>> q(static_cast<size_t>(p.k));
  for (int i = 0; i < p.k; ++i) {
    const double ang = p.base_angle + 2.0 * kPi * i / p.k;
    q[static_cast<size_t>(i)] = {(1.0 + p.r_off) * std::cos(ang),
                                 (1.0 + p.r_off) * std::sin(ang)};
  }
  return q;
}

double phi_value(double mu, const std::array<double, 2>& q, double x, double y) {
  const double dx = x - q[0], dy = y - q[1];
  const double d2 = dx * dx + dy * dy;
  const double denom = mu * mu * d2 - 1.0;
  if (denom <= 0.0) {
    throw Error(ErrorCode::PoleInsideClosure, "bubble pole reaches the closed disk");
  }
  return std::log(4.0 * mu * mu / (denom * denom));
}

void validate_kpoint(const BubbleParams& p) {
  if (p.k < 1) throw Error(ErrorCode::InvalidOptions, "bubble count k must be >= 1");
  if (!(p.r_off > 0.0)) throw Error(ErrorCode::InvalidOptions, "r_off must be > 0");
  if (!(p.mu * p.r_off > 1.0)) {
    throw Error(ErrorCode::PoleInsideClosure, "KPoint bubbles need mu * r_off > 1");
  }
}

double logsumexp(const std::vector<double>& phis) {
  double m = phis[0];
  for (double v : phis) m = std::max(m, v);
  double acc = 0.0;
  for (double v : phis) acc += std::exp(v - m);
  return m + std::log(acc);
}

}  // namespace

ScalarField bubble_phi(const BubbleParams& params, std::array<double, 2> q, const Grid& grid) {
  ScalarField out(grid);
  for (int j = 0; j < grid.n_r; ++j) {
    const double r = grid.radius(j);
    for (int i = 0; i < grid.n_theta; ++i) {
      const double th = grid.theta(i);
      out.at(j, i) = phi_value(params.mu, q, r * std::cos(th), r * std::sin(th));
    }
  }
  return out;
}

ScalarField bubble_sum_Phi(const BubbleParams& params, const Grid& grid) {
  validate_kpoint(params);
  const auto qs = bubble_centers(params);
  ScalarField out(grid);
  std::vector<double> phis(qs.size());
  for (int j = 0; j < grid.n_r; ++j) {
    const double r = grid.radius(j);
    for (int i = 0; i < grid.n_theta; ++i) {
      const double th = grid.theta(i);
      const double x = r * std::cos(th), y = r * std::sin(th);
      for (size_t b = 0; b < qs.size(); ++b) phis[b] = phi_value(params.mu, qs[b], x, y);
      out.at(j, i) = logsumexp(phis);
    }
  }
  return out;
}

BoundaryField bubble_sum_Phi_boundary(const BubbleParams& params, const Grid& grid) {
  validate_kpoint(params);
  const auto qs = bubble_centers(params);
  BoundaryField out(grid);
  std::vector<double> phis(qs.size());
  for (int i = 0; i < grid.n_theta; ++i) {
    const double th = grid.theta(i);
    const double x = std::cos(th), y = std::sin(th);
    for (size_t b = 0; b < qs.size(); ++b) phis[b] = phi_value(params.mu, qs[b], x, y);
    out.at(i) = logsumexp(phis);
  }
  return out;
}

ScalarField radial_bubble(double mu, const Grid& grid) {
  if (!(mu > 1.0)) throw Error(ErrorCode::MuNotAboveOne, "radial bubble needs mu > 1");
  ScalarField out(grid);
  for (int j = 0; j < grid.n_r; ++j) {
    const double r = grid.radius(j);
    const double val = 2.0 * std::log(2.0 * mu / (mu * mu - r * r));
    for (int i = 0; i < grid.n_theta; ++i) out.at(j, i) = val;
  }
  return out;
}

ScalarField tilde(const ScalarField& f, const ScalarField& K) {
  require_same_grid(f.grid, K.grid, "tilde");
  ScalarField out(f.grid);
  for (size_t t = 0; t < f.data.size(); ++t) {
    if (!(K.data[t] < 0.0)) {
      throw Error(ErrorCode::DegenerateCurvature, "tilde requires K < 0 on the closed disk");
    }
    out.data[t] = f.data[t] - std::log(-K.data[t]);
  }
  return out;
}

OracleReport appendix_oracles(const BubbleParams& params, double D_min) {
  OracleReport rep;
  if (params.placement == BubbleParams::Placement::Radial) {
    if (!(params.mu > 1.0)) throw Error(ErrorCode::MuNotAboveOne, "radial oracle needs mu > 1");
    const double mu2 = params.mu * params.mu;
    rep.radial = true;
    rep.grad_sq = 16.0 * kPi / (mu2 * (mu2 - 1.0));
    rep.area = 4.0 * kPi / (mu2 - 1.0);
    rep.boundary = 4.0 * kPi * params.mu / (mu2 - 1.0);
    rep.boundary_log = 4.0 * kPi * std::log(2.0 * params.mu / (mu2 - 1.0));
  } else {
    validate_kpoint(params);
    const double s = std::sqrt(params.mu * params.mu * params.r_off * params.r_off - 1.0);
    rep.radial = false;
    rep.grad_sq = 8.0 * params.k * kPi / s;
    rep.area = 2.0 * params.k * kPi * params.mu * params.r_off / s;
    rep.boundary = D_min * 2.0 * params.k * kPi / s;
    rep.boundary_log = 0.0;
  }
  return rep;
}

int required_resolution(const BubbleParams& params, double mu) {
  if (params.placement == BubbleParams::Placement::Radial) {
    // concentration layer about r=1 of width ~ (mu^2-1)/2
    const double layer = (mu * mu - 1.0) / 2.0;
    return static_cast<int>(std::ceil(8.0 / layer));
  }
  const double s2 = mu * mu * params.r_off * params.r_off - 1.0;
  if (s2 <= 0.0) throw Error(ErrorCode::PoleInsideClosure, "mu * r_off must exceed 1");
  // boundary layer in angle of width ~ sqrt(s2)/mu
  const double layer = std::sqrt(s2) / mu;
  return static_cast<int>(std::ceil(16.0 * kPi / layer));
}

std::vector<BubbleScanRow> unboundedness_scan(const ScalarField& K, const BoundaryField& h,
                                              const BubbleParams& params_template,
                                              const std::vector<double>& mu_schedule) {
  require_same_grid(K.grid, h.grid, "unboundedness_scan");
  const Grid& g = K.grid;
  const DeficitProfile D = deficit(K, h);

  std::vector<BubbleScanRow> rows;
  rows.reserve(mu_schedule.size());
  for (double mu : mu_schedule) {
    BubbleParams p = params_template;
    p.mu = mu;
    const int need = required_resolution(p, mu);
    const bool radial = p.placement == BubbleParams::Placement::Radial;
    if ((radial && g.n_r < need) || (!radial && g.n_theta < need)) {
      throw Error(ErrorCode::ScanResolution,
                  std::string("bubble layer under-resolved at mu=") + std::to_string(mu) +
                      "; need " + (radial ? "n_r" : "n_theta") + " >= " + std::to_string(need));
    }

    const ScalarField phi = radial ? radial_bubble(mu, g) : bubble_sum_Phi(p, g);
    const ScalarField phit = tilde(phi, K);

    BubbleScanRow row;
    row.mu = mu;
    const EnergyReport er = energy_I(phit, K, h);
    row.I_value = er.I_value;
    row.dirichlet = er.dirichlet;
    row.area_term = er.area_term;
    row.linear_boundary = er.linear_boundary;
    row.curvature_boundary = er.curvature_boundary;

    BoundaryField bl(g);
    const int jb = g.boundary_ring();
    for (int i = 0; i < g.n_theta; ++i) bl.at(i) = std::exp(0.5 * phit.at(jb, i));
    row.boundary_length = integrate_boundary(bl);

    if (radial) {
      double dmin = D.values.min();
      row.min_deficit_cap = dmin;
      row.predicted = 16.0 * kPi * (1.0 - dmin) / (mu * mu - 1.0);
    } else {
      // min of the deficit over the boundary cap of radius r_off about p_1
      double dmin = std::numeric_limits<double>::infinity();
      const double px = std::cos(p.base_angle), py = std::sin(p.base_angle);
      for (int i = 0; i < g.n_theta; ++i) {
        const double th = g.theta(i);
        const double dx = std::cos(th) - px, dy = std::sin(th) - py;
        if (dx * dx + dy * dy <= p.r_off * p.r_off) dmin = std::min(dmin, D.values.at(i));
      }
      if (!std::isfinite(dmin)) dmin = D.values.min();
      row.min_deficit_cap = dmin;
      const double s = std::sqrt(mu * mu * p.r_off * p.r_off - 1.0);
      row.predicted = 8.0 * p.k * kPi * (1.0 - dmin) / s;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace diskcurv
