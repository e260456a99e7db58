#include "diskcurv/energy.hpp"

#include <cmath>

#include "diskcurv/operators.hpp"

namespace diskcurv {

double clamped_exp(double x, bool* overflow) {
  if (x > 250.0) {
    if (overflow) *overflow = true;
    x = 250.0;
  }
  return std::exp(x);
}

EnergyReport energy_I(const ScalarField& u, const ScalarField& K, const BoundaryField& h) {
  require_same_grid(u.grid, K.grid, "energy_I");
  require_same_grid(u.grid, h.grid, "energy_I");
  EnergyReport rep;
  bool overflow = false;

  rep.dirichlet = 0.5 * dirichlet_form(u, u);

  ScalarField area(u.grid);
  for (size_t t = 0; t < u.data.size(); ++t)
    area.data[t] = -2.0 * K.data[t] * clamped_exp(u.data[t], &overflow);
  rep.area_term = integrate_disk(area);

  rep.linear_boundary = 2.0 * integrate_boundary(boundary_trace(u));

  BoundaryField bc(u.grid);
  const int jb = u.grid.boundary_ring();
  for (int i = 0; i < u.grid.n_theta; ++i)
    bc.at(i) = -4.0 * h.at(i) * clamped_exp(0.5 * u.at(jb, i), &overflow);
  rep.curvature_boundary = integrate_boundary(bc);

  rep.I_value = rep.dirichlet + rep.area_term + rep.linear_boundary + rep.curvature_boundary;
  rep.overflow = overflow;
  return rep;
}

double energy_J(const ScalarField& u, const ScalarField& K, bool* overflow) {
  require_same_grid(u.grid, K.grid, "energy_J");
  bool of = false;
  ScalarField f(u.grid);
  for (size_t t = 0; t < u.data.size(); ++t)
    f.data[t] = std::abs(K.data[t]) * (clamped_exp(u.data[t], &of) - u.data[t]);
  const double val = dirichlet_form(u, u) + integrate_disk(f);
  if (overflow) *overflow = of;
  return val;
}

PerturbedCoeffs perturbed_coeffs(const ScalarField& K, const BoundaryField& h, double eps) {
  require_same_grid(K.grid, h.grid, "perturbed_coeffs");
  if (eps < 0.0) throw Error(ErrorCode::NegativeEps, "eps must be >= 0");
  PerturbedCoeffs c;
  c.eps = eps;
  const double denom = 1.0 + 2.0 * eps;
  c.K_tilde = ScalarField(K.grid);
  c.K_eff = ScalarField(K.grid);
  for (size_t t = 0; t < K.data.size(); ++t) {
    const double absK = std::abs(K.data[t]);
    c.K_tilde.data[t] = -eps * absK / (2.0 * denom);
    c.K_eff.data[t] = -absK * (1.0 + eps / 2.0) / denom;
  }
  c.h_tilde = 1.0 / denom;
  c.h_eff = BoundaryField(h.grid);
  for (size_t t = 0; t < h.data.size(); ++t) c.h_eff.data[t] = h.data[t] / denom;
  return c;
}

double perturbed_energy(const ScalarField& u, const PerturbedCoeffs& c, bool* overflow) {
  require_same_grid(u.grid, c.K_eff.grid, "perturbed_energy");
  bool of = false;
  double val = 0.5 * dirichlet_form(u, u);

  ScalarField area(u.grid);
  for (size_t t = 0; t < u.data.size(); ++t)
    area.data[t] =
        2.0 * c.K_tilde.data[t] * u.data[t] - 2.0 * c.K_eff.data[t] * clamped_exp(u.data[t], &of);
  val += integrate_disk(area);

  BoundaryField bc(u.grid);
  const int jb = u.grid.boundary_ring();
  for (int i = 0; i < u.grid.n_theta; ++i)
    bc.at(i) = 2.0 * c.h_tilde * u.at(jb, i) -
               4.0 * c.h_eff.at(i) * clamped_exp(0.5 * u.at(jb, i), &of);
  val += integrate_boundary(bc);

  if (overflow) *overflow = of;
  return val;
}

Residual residual(const ScalarField& u, const PerturbedCoeffs& c) {
  require_same_grid(u.grid, c.K_eff.grid, "residual");
  const Grid& g = u.grid;
  const int m = g.n_r, n = g.n_theta;
  const double dr = g.dr(), dth = g.dtheta();
  const int jb = g.boundary_ring();
  bool of = false;

  Residual res{ScalarField(g), BoundaryField(g)};

  // Interior rings: flux-form Laplacian plus reaction. Same stencil as
  // laplacian() away from the boundary ring.
  const ScalarField lap = laplacian(u);
  for (int j = 0; j < m - 1; ++j) {
    for (int i = 0; i < n; ++i) {
      res.interior.at(j, i) =
          -lap.at(j, i) + 2.0 * c.K_tilde.at(j, i) -
          2.0 * c.K_eff.at(j, i) * clamped_exp(u.at(j, i), &of);
    }
  }

  // Boundary ring: variational Robin residual. The half-cell terms make the
  // pair (interior, boundary) the exact gradient of perturbed_energy; at a
  // solution they cancel against the one-sided flux to second order.
  for (int i = 0; i < n; ++i) {
    const int ip = (i + 1) % n, im = (i + n - 1) % n;
    const double flux = (1.0 - dr / 2.0) * (u.at(jb, i) - u.at(jb - 1, i)) / dr;
    const double ang = -(u.at(jb, ip) - 2.0 * u.at(jb, i) + u.at(jb, im)) / (dth * dth);
    const double react =
        2.0 * c.K_tilde.at(jb, i) - 2.0 * c.K_eff.at(jb, i) * clamped_exp(u.at(jb, i), &of);
    res.boundary.at(i) = flux + (dr / 2.0) * (ang + react) + 2.0 * c.h_tilde -
                         2.0 * c.h_eff.at(i) * clamped_exp(0.5 * u.at(jb, i), &of);
  }
  return res;
}

double residual_pairing(const Residual& res, const ScalarField& v) {
  require_same_grid(res.interior.grid, v.grid, "residual_pairing");
  const Grid& g = v.grid;
  const std::vector<double> w = radial_weights(g);
  const int jb = g.boundary_ring();
  std::vector<double> terms;
  terms.reserve(static_cast<size_t>(g.size()));
  for (int j = 0; j < jb; ++j)
    for (int i = 0; i < g.n_theta; ++i)
      terms.push_back(w[static_cast<size_t>(j)] * res.interior.at(j, i) * v.at(j, i));
  for (int i = 0; i < g.n_theta; ++i) terms.push_back(res.boundary.at(i) * v.at(jb, i));
  return compensated_sum(terms) * g.dtheta();
}

double quadratic_form_Q(const ScalarField& u, const PerturbedCoeffs& c, const ScalarField& psi) {
  require_same_grid(u.grid, psi.grid, "quadratic_form_Q");
  require_same_grid(u.grid, c.K_eff.grid, "quadratic_form_Q");
  bool of = false;
  double val = dirichlet_form(psi, psi);

  ScalarField area(u.grid);
  for (size_t t = 0; t < u.data.size(); ++t)
    area.data[t] =
        -2.0 * psi.data[t] * psi.data[t] * c.K_eff.data[t] * clamped_exp(u.data[t], &of);
  val += integrate_disk(area);

  BoundaryField bc(u.grid);
  const int jb = u.grid.boundary_ring();
  for (int i = 0; i < u.grid.n_theta; ++i)
    bc.at(i) = -psi.at(jb, i) * psi.at(jb, i) * c.h_eff.at(i) *
               clamped_exp(0.5 * u.at(jb, i), &of);
  val += integrate_boundary(bc);

  return (1.0 + 2.0 * c.eps) * val;
}

double chi_of_coeffs(const PerturbedCoeffs& c) {
  BoundaryField ht(c.h_eff.grid, c.h_tilde);
  return integrate_disk(c.K_tilde) + integrate_boundary(ht);
}

}  // namespace diskcurv
