#include "diskcurv/radial.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace diskcurv {

namespace {

constexpr double kBlowUpClamp = 500.0;

double poly_eval_r2(const std::vector<double>& c, double r2) {
  double acc = 0.0;
  for (size_t m = c.size(); m-- > 0;) acc = acc * r2 + c[m];
  return acc;
}

double poly_deriv_r(const std::vector<double>& c, double r) {
  // d/dr of sum c_m r^{2m}
  const double r2 = r * r;
  double acc = 0.0;
  for (size_t m = c.size(); m-- > 1;) acc = acc * r2 + 2.0 * static_cast<double>(m) * c[m];
  return acc * r;
}

}  // namespace

double RadialCoeffs::K(double r) const { return poly_eval_r2(K_poly, r * r); }
double RadialCoeffs::K_prime(double r) const { return poly_deriv_r(K_poly, r); }

double RadialCoeffs::K_eff(double r) const {
  return -std::abs(K(r)) * (1.0 + eps / 2.0) / (1.0 + 2.0 * eps);
}
double RadialCoeffs::K_eff_prime(double r) const {
  // with K <= 0, |K| = -K, so d(-|K|)/dr = dK/dr
  return K_prime(r) * (1.0 + eps / 2.0) / (1.0 + 2.0 * eps);
}
double RadialCoeffs::K_tilde(double r) const {
  return -eps * std::abs(K(r)) / (2.0 * (1.0 + 2.0 * eps));
}
double RadialCoeffs::K_eff0() const { return K_eff(0.0); }
double RadialCoeffs::K_eff_r2() const {
  const double k1 = K_poly.size() > 1 ? K_poly[1] : 0.0;
  return k1 * (1.0 + eps / 2.0) / (1.0 + 2.0 * eps);
}
double RadialCoeffs::K_tilde0() const { return K_tilde(0.0); }
double RadialCoeffs::K_tilde_r2() const {
  const double k1 = K_poly.size() > 1 ? K_poly[1] : 0.0;
  return k1 * eps / (2.0 * (1.0 + 2.0 * eps));
}

RadialCoeffs make_radial_coeffs(const InteriorCurvature& K_def, double h_at_1, double eps) {
  if (eps < 0.0) throw Error(ErrorCode::NegativeEps, "eps must be >= 0");
  RadialCoeffs c;
  c.eps = eps;
  switch (K_def.kind) {
    case InteriorCurvature::Kind::Constant:
      c.K_poly = {K_def.value};
      break;
    case InteriorCurvature::Kind::RadialPolynomial:
      c.K_poly = K_def.coeffs;
      break;
    case InteriorCurvature::Kind::Tabulated:
      throw Error(ErrorCode::InvalidOptions, "radial solver needs constant or polynomial K");
  }
  // the |K| = -K simplifications above need K <= 0 on [0,1]
  for (int s = 0; s <= 64; ++s) {
    if (c.K(s / 64.0) > 0.0)
      throw Error(ErrorCode::DegenerateCurvature, "radial solver requires K <= 0");
  }
  c.h_tilde = 1.0 / (1.0 + 2.0 * eps);
  c.h_eff1 = h_at_1 / (1.0 + 2.0 * eps);
  return c;
}

ShootResult shoot(double a, const RadialCoeffs& c, int n_steps) {
  if (n_steps < 64) throw Error(ErrorCode::InvalidOptions, "shoot needs n_steps >= 64");
  const double h = 1.0 / n_steps;
  ShootResult out;
  RadialProfile& p = out.profile;
  p.a = a;
  p.coeffs = c;
  p.r_nodes.resize(static_cast<size_t>(n_steps) + 1);
  p.u.resize(static_cast<size_t>(n_steps) + 1);
  p.u_prime.resize(static_cast<size_t>(n_steps) + 1);

  // Series start: u = a + b r^2 + d r^4 with 4b = f(0,a) and
  // 16 d = f_u(0,a) b + f_{r^2}(0,a), where f = 2 K_tilde - 2 K_eff e^u.
  const double ea = std::exp(std::min(a, kBlowUpClamp));
  const double f0 = 2.0 * c.K_tilde0() - 2.0 * c.K_eff0() * ea;
  const double fu = -2.0 * c.K_eff0() * ea;
  const double fr2 = 2.0 * c.K_tilde_r2() - 2.0 * c.K_eff_r2() * ea;
  const double b = f0 / 4.0;
  const double d = (fu * b + fr2) / 16.0;

  p.r_nodes[0] = 0.0;
  p.u[0] = a;
  p.u_prime[0] = 0.0;
  double r = h;
  double u = a + b * h * h + d * h * h * h * h;
  double v = 2.0 * b * h + 4.0 * d * h * h * h;
  p.r_nodes[1] = r;
  p.u[1] = u;
  p.u_prime[1] = v;

  auto rhs = [&c](double rr, double uu, double vv, double& du, double& dv) {
    du = vv;
    dv = -vv / rr + 2.0 * c.K_tilde(rr) - 2.0 * c.K_eff(rr) * std::exp(std::min(uu, kBlowUpClamp));
  };

  for (int s = 1; s < n_steps; ++s) {
    double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
    rhs(r, u, v, k1u, k1v);
    rhs(r + h / 2, u + h / 2 * k1u, v + h / 2 * k1v, k2u, k2v);
    rhs(r + h / 2, u + h / 2 * k2u, v + h / 2 * k2v, k3u, k3v);
    rhs(r + h, u + h * k3u, v + h * k3v, k4u, k4v);
    u += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
    v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    r = (s + 1) * h;
    p.r_nodes[static_cast<size_t>(s) + 1] = r;
    p.u[static_cast<size_t>(s) + 1] = u;
    p.u_prime[static_cast<size_t>(s) + 1] = v;
    if (u > kBlowUpClamp || !std::isfinite(u) || !std::isfinite(v)) {
      out.blew_up = true;
      out.blowup_radius = r;
      out.mismatch = std::numeric_limits<double>::infinity();
      p.r_nodes.resize(static_cast<size_t>(s) + 2);
      p.u.resize(static_cast<size_t>(s) + 2);
      p.u_prime.resize(static_cast<size_t>(s) + 2);
      return out;
    }
  }
  out.u1 = u;
  out.up1 = v;
  out.mismatch = v + 2.0 * c.h_tilde - 2.0 * c.h_eff1 * std::exp(u / 2.0);
  return out;
}

RadialSolveResult solve_radial(const RadialCoeffs& c, double a_lo, double a_hi, int n_samples,
                               int n_steps) {
  if (!(a_lo < a_hi)) throw Error(ErrorCode::InvalidOptions, "solve_radial: a_lo < a_hi required");
  if (n_samples < 2) throw Error(ErrorCode::InvalidOptions, "solve_radial: n_samples >= 2");

  RadialSolveResult out;
  out.min_abs_mismatch = std::numeric_limits<double>::infinity();
  out.min_mismatch = std::numeric_limits<double>::infinity();

  auto F = [&](double a) { return shoot(a, c, n_steps); };

  std::vector<double> as(static_cast<size_t>(n_samples));
  std::vector<ShootResult> shots(static_cast<size_t>(n_samples));
  for (int s = 0; s < n_samples; ++s) {
    const double a = a_lo + (a_hi - a_lo) * s / (n_samples - 1);
    as[static_cast<size_t>(s)] = a;
    shots[static_cast<size_t>(s)] = F(a);
    RadialScanRow row;
    row.a = a;
    row.mismatch = shots[static_cast<size_t>(s)].mismatch;
    if (shots[static_cast<size_t>(s)].blew_up)
      row.blowup_radius = shots[static_cast<size_t>(s)].blowup_radius;
    out.scan.push_back(row);
    if (!shots[static_cast<size_t>(s)].blew_up) {
      out.min_abs_mismatch = std::min(out.min_abs_mismatch, std::abs(row.mismatch));
      out.min_mismatch = std::min(out.min_mismatch, row.mismatch);
    }
  }

  for (int s = 0; s + 1 < n_samples; ++s) {
    const ShootResult& L = shots[static_cast<size_t>(s)];
    const ShootResult& R = shots[static_cast<size_t>(s) + 1];
    if (L.blew_up || R.blew_up) continue;
    if (L.mismatch * R.mismatch > 0.0) continue;

    // bisection with a secant proposal inside the bracket
    double lo = as[static_cast<size_t>(s)], hi = as[static_cast<size_t>(s) + 1];
    double flo = L.mismatch, fhi = R.mismatch;
    double root = lo, froot = flo;
    for (int it = 0; it < 200 && std::abs(froot) > 1e-10; ++it) {
      double mid = (flo != fhi) ? lo - flo * (hi - lo) / (fhi - flo) : 0.5 * (lo + hi);
      const double safe_lo = lo + 0.01 * (hi - lo), safe_hi = hi - 0.01 * (hi - lo);
      if (!(mid > safe_lo && mid < safe_hi)) mid = 0.5 * (lo + hi);
      const ShootResult sm = F(mid);
      if (sm.blew_up) {
        hi = mid;
        fhi = std::numeric_limits<double>::infinity();
        continue;
      }
      root = mid;
      froot = sm.mismatch;
      if (flo * froot <= 0.0) {
        hi = mid;
        fhi = froot;
      } else {
        lo = mid;
        flo = froot;
      }
    }
    if (std::abs(froot) <= 1e-10) {
      out.roots.push_back(F(root).profile);
    }
  }
  return out;
}

double pohozaev_residual(const RadialProfile& p) {
  const RadialCoeffs& c = p.coeffs;
  const size_t n = p.r_nodes.size();
  if (n < 3) throw Error(ErrorCode::InvalidOptions, "pohozaev_residual: profile too short");
  const double u1 = p.u.back(), u0 = p.u.front();

  // trapezoid quadratures along the profile; (u')^2/r -> 0 at the pole
  double int_up2_over_r = 0.0;
  double int_Kp_eu = 0.0;
  for (size_t s = 0; s + 1 < n; ++s) {
    const double h = p.r_nodes[s + 1] - p.r_nodes[s];
    const double fa = p.r_nodes[s] > 0.0 ? p.u_prime[s] * p.u_prime[s] / p.r_nodes[s] : 0.0;
    const double fb = p.u_prime[s + 1] * p.u_prime[s + 1] / p.r_nodes[s + 1];
    int_up2_over_r += 0.5 * h * (fa + fb);
    const double ga = 2.0 * c.K_eff_prime(p.r_nodes[s]) * std::exp(p.u[s]);
    const double gb = 2.0 * c.K_eff_prime(p.r_nodes[s + 1]) * std::exp(p.u[s + 1]);
    int_Kp_eu += 0.5 * h * (ga + gb);
  }

  double tilde_term;
  if (c.K_poly.size() <= 1) {
    tilde_term = 2.0 * c.K_tilde(0.0) * (u1 - u0);
  } else {
    tilde_term = 0.0;
    for (size_t s = 0; s + 1 < n; ++s) {
      const double h = p.r_nodes[s + 1] - p.r_nodes[s];
      tilde_term += 0.5 * h *
                    (2.0 * c.K_tilde(p.r_nodes[s]) * p.u_prime[s] +
                     2.0 * c.K_tilde(p.r_nodes[s + 1]) * p.u_prime[s + 1]);
    }
  }

  const double he = c.h_eff1, ht = c.h_tilde;
  const double A1 = -2.0 * he * he * std::exp(u1) - 2.0 * ht * ht +
                    4.0 * he * ht * std::exp(u1 / 2.0) - int_up2_over_r + tilde_term;
  const double A2 =
      2.0 * c.K_eff(1.0) * std::exp(u1) - 2.0 * c.K_eff(0.0) * std::exp(u0) - int_Kp_eu;
  return A2 - A1;
}

ExactHyperbolic exact_hyperbolic(double h0, int n_steps) {
  if (!(h0 > 1.0))
    throw Error(ErrorCode::DeficitNotAboveOne, "exact hyperbolic solution needs h0 > 1");
  ExactHyperbolic out;
  out.mu = h0 + std::sqrt(h0 * h0 - 1.0);
  const double mu2 = out.mu * out.mu;
  RadialProfile& p = out.profile;
  p.coeffs = make_radial_coeffs(InteriorCurvature::constant(-1.0), h0, 0.0);
  p.a = 2.0 * std::log(2.0 / out.mu);
  p.r_nodes.resize(static_cast<size_t>(n_steps) + 1);
  p.u.resize(static_cast<size_t>(n_steps) + 1);
  p.u_prime.resize(static_cast<size_t>(n_steps) + 1);
  for (int s = 0; s <= n_steps; ++s) {
    const double r = static_cast<double>(s) / n_steps;
    p.r_nodes[static_cast<size_t>(s)] = r;
    p.u[static_cast<size_t>(s)] = 2.0 * std::log(2.0 * out.mu / (mu2 - r * r));
    p.u_prime[static_cast<size_t>(s)] = 4.0 * r / (mu2 - r * r);
  }
  return out;
}

double radial_gauss_bonnet_residual(const RadialProfile& p) {
  const RadialCoeffs& c = p.coeffs;
  const size_t n = p.r_nodes.size();
  double area = 0.0, tilde_area = 0.0;
  for (size_t s = 0; s + 1 < n; ++s) {
    const double h = p.r_nodes[s + 1] - p.r_nodes[s];
    const double fa = c.K_eff(p.r_nodes[s]) * std::exp(p.u[s]) * p.r_nodes[s];
    const double fb = c.K_eff(p.r_nodes[s + 1]) * std::exp(p.u[s + 1]) * p.r_nodes[s + 1];
    area += 0.5 * h * (fa + fb);
    tilde_area += 0.5 * h * (c.K_tilde(p.r_nodes[s]) * p.r_nodes[s] +
                             c.K_tilde(p.r_nodes[s + 1]) * p.r_nodes[s + 1]);
  }
  const double two_pi = 2.0 * std::numbers::pi;
  const double chi = two_pi * tilde_area + two_pi * c.h_tilde;
  return two_pi * area + two_pi * c.h_eff1 * std::exp(p.u.back() / 2.0) - chi;
}

ScalarField inject_radial(const RadialProfile& p, const Grid& g) {
  ScalarField out(g);
  for (int j = 0; j < g.n_r; ++j) {
    const double r = g.radius(j);
    // locate the containing interval (nodes are uniform from 0 to 1)
    const size_t n = p.r_nodes.size();
    const double rmax = p.r_nodes.back();
    if (r > rmax + 1e-12)
      throw Error(ErrorCode::OutOfRange, "inject_radial: profile does not reach r=1");
    size_t s = static_cast<size_t>(r / rmax * (n - 1));
    if (s >= n - 1) s = n - 2;
    const double t = (r - p.r_nodes[s]) / (p.r_nodes[s + 1] - p.r_nodes[s]);
    const double val = (1.0 - t) * p.u[s] + t * p.u[s + 1];
    for (int i = 0; i < g.n_theta; ++i) out.at(j, i) = val;
  }
  return out;
}

}  // namespace diskcurv
