#include "diskcurv/operators.hpp"

#include <cmath>

namespace diskcurv {

namespace {

// Kahan accumulator, fixed evaluation order.
struct Kahan {
  double sum = 0.0;
  double c = 0.0;
  void add(double value) {
    const double y = value - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

double ring_mean(const ScalarField& u, int j) {
  Kahan acc;
  for (int i = 0; i < u.grid.n_theta; ++i) acc.add(u.at(j, i));
  return acc.sum / u.grid.n_theta;
}

}  // namespace

double compensated_sum(const std::vector<double>& terms) {
  Kahan acc;
  for (double t : terms) acc.add(t);
  return acc.sum;
}

std::vector<double> radial_weights(const Grid& g) {
  const double dr = g.dr();
  std::vector<double> w(static_cast<size_t>(g.n_r));
  // Trapezoid on [r_0, 1] plus the pole cell [0, r_0] with the integrand
  // frozen at r_0 (area r_0^2/2 per unit angle). The first weight collapses
  // to r_0*dr exactly, which is what makes the Dirichlet form and the
  // interior residual share one set of weights.
  w[0] = g.radius(0) * dr / 2.0 + g.radius(0) * g.radius(0) / 2.0;
  for (int j = 1; j < g.n_r - 1; ++j) w[static_cast<size_t>(j)] = g.radius(j) * dr;
  w[static_cast<size_t>(g.n_r - 1)] = dr / 2.0;
  return w;
}

double integrate_disk(const ScalarField& f) {
  const Grid& g = f.grid;
  const std::vector<double> w = radial_weights(g);
  Kahan acc;
  for (int j = 0; j < g.n_r; ++j) {
    Kahan ring;
    for (int i = 0; i < g.n_theta; ++i) ring.add(f.at(j, i));
    acc.add(w[static_cast<size_t>(j)] * ring.sum);
  }
  return acc.sum * g.dtheta();
}

double integrate_boundary(const BoundaryField& f) {
  Kahan acc;
  for (int i = 0; i < f.grid.n_theta; ++i) acc.add(f.at(i));
  return acc.sum * f.grid.dtheta();
}

ScalarField laplacian(const ScalarField& u) {
  const Grid& g = u.grid;
  const int m = g.n_r, n = g.n_theta;
  const double dr = g.dr(), dth = g.dtheta();
  ScalarField out(g);

  const double mean0 = ring_mean(u, 0);
  for (int j = 0; j < m - 1; ++j) {
    const double r = g.radius(j);
    const double rp = r + dr / 2.0;
    const double rm = r - dr / 2.0;
    for (int i = 0; i < n; ++i) {
      const int ip = (i + 1) % n, im = (i + n - 1) % n;
      const double ghost = (j == 0) ? mean0 : u.at(j - 1, i);
      const double radial =
          (rp * (u.at(j + 1, i) - u.at(j, i)) - rm * (u.at(j, i) - ghost)) / (r * dr * dr);
      const double angular = (u.at(j, ip) - 2.0 * u.at(j, i) + u.at(j, im)) / (r * r * dth * dth);
      out.at(j, i) = radial + angular;
    }
  }
  // One-sided stencil on the boundary ring, exact for quadratics in r.
  {
    const int jb = m - 1;
    const double r = 1.0;
    for (int i = 0; i < n; ++i) {
      const int ip = (i + 1) % n, im = (i + n - 1) % n;
      const double urr = (2.0 * u.at(jb, i) - 5.0 * u.at(jb - 1, i) + 4.0 * u.at(jb - 2, i) -
                          u.at(jb - 3, i)) /
                         (dr * dr);
      const double ur =
          (3.0 * u.at(jb, i) - 4.0 * u.at(jb - 1, i) + u.at(jb - 2, i)) / (2.0 * dr);
      const double angular = (u.at(jb, ip) - 2.0 * u.at(jb, i) + u.at(jb, im)) / (r * r * dth * dth);
      out.at(jb, i) = urr + ur / r + angular;
    }
  }
  return out;
}

BoundaryField normal_derivative(const ScalarField& u) {
  const Grid& g = u.grid;
  if (g.n_r < 4) throw Error(ErrorCode::InvalidGrid, "normal_derivative needs n_r >= 4");
  BoundaryField out(g);
  const int jb = g.boundary_ring();
  const double dr = g.dr();
  for (int i = 0; i < g.n_theta; ++i) {
    out.at(i) = (3.0 * u.at(jb, i) - 4.0 * u.at(jb - 1, i) + u.at(jb - 2, i)) / (2.0 * dr);
  }
  return out;
}

ScalarField gradient_sq(const ScalarField& u) {
  const Grid& g = u.grid;
  const int m = g.n_r, n = g.n_theta;
  const double dr = g.dr(), dth = g.dtheta();
  ScalarField out(g);
  const double mean0 = ring_mean(u, 0);
  for (int j = 0; j < m; ++j) {
    const double r = g.radius(j);
    for (int i = 0; i < n; ++i) {
      const int ip = (i + 1) % n, im = (i + n - 1) % n;
      double ur;
      if (j == m - 1) {
        ur = (3.0 * u.at(j, i) - 4.0 * u.at(j - 1, i) + u.at(j - 2, i)) / (2.0 * dr);
      } else {
        const double ghost = (j == 0) ? mean0 : u.at(j - 1, i);
        ur = (u.at(j + 1, i) - ghost) / (2.0 * dr);
      }
      const double ut = (u.at(j, ip) - u.at(j, im)) / (2.0 * dth);
      out.at(j, i) = ur * ur + (ut * ut) / (r * r);
    }
  }
  return out;
}

double dirichlet_form(const ScalarField& u, const ScalarField& v) {
  require_same_grid(u.grid, v.grid, "dirichlet_form");
  const Grid& g = u.grid;
  const int m = g.n_r, n = g.n_theta;
  const double dr = g.dr(), dth = g.dtheta();
  const std::vector<double> w = radial_weights(g);

  Kahan acc;
  // Radial faces between consecutive rings.
  for (int j = 0; j < m - 1; ++j) {
    const double rface = g.radius(j) + dr / 2.0;
    Kahan ring;
    for (int i = 0; i < n; ++i)
      ring.add((u.at(j + 1, i) - u.at(j, i)) * (v.at(j + 1, i) - v.at(j, i)));
    acc.add(rface * ring.sum * dth / dr);
  }
  // Pole faces: variation of the first ring about its angular mean.
  {
    const double rface = g.radius(0) - dr / 2.0;
    const double mu = ring_mean(u, 0), mv = ring_mean(v, 0);
    Kahan ring;
    for (int i = 0; i < n; ++i) ring.add((u.at(0, i) - mu) * (v.at(0, i) - mv));
    acc.add(rface * ring.sum * dth / dr);
  }
  // Angular faces, radial weight shared with integrate_disk.
  for (int j = 0; j < m; ++j) {
    const double r = g.radius(j);
    Kahan ring;
    for (int i = 0; i < n; ++i) {
      const int ip = (i + 1) % n;
      ring.add((u.at(j, ip) - u.at(j, i)) * (v.at(j, ip) - v.at(j, i)));
    }
    acc.add(w[static_cast<size_t>(j)] / (r * r * dth) * ring.sum);
  }
  return acc.sum;
}

std::vector<double> dirichlet_grad(const ScalarField& u) {
  const Grid& g = u.grid;
  const int m = g.n_r, n = g.n_theta;
  const double dr = g.dr(), dth = g.dtheta();
  const std::vector<double> w = radial_weights(g);
  std::vector<double> out(static_cast<size_t>(g.size()), 0.0);
  auto idx = [n](int j, int i) { return static_cast<size_t>(j) * n + i; };

  for (int j = 0; j < m - 1; ++j) {
    const double c = (g.radius(j) + dr / 2.0) * dth / dr;
    for (int i = 0; i < n; ++i) {
      const double d = u.at(j + 1, i) - u.at(j, i);
      out[idx(j + 1, i)] += c * d;
      out[idx(j, i)] -= c * d;
    }
  }
  {
    const double c = (g.radius(0) - dr / 2.0) * dth / dr;
    const double mu = ring_mean(u, 0);
    for (int i = 0; i < n; ++i) out[idx(0, i)] += c * (u.at(0, i) - mu);
  }
  for (int j = 0; j < m; ++j) {
    const double r = g.radius(j);
    const double c = w[static_cast<size_t>(j)] / (r * r * dth);
    for (int i = 0; i < n; ++i) {
      const int ip = (i + 1) % n;
      const double d = u.at(j, ip) - u.at(j, i);
      out[idx(j, ip)] += c * d;
      out[idx(j, i)] -= c * d;
    }
  }
  return out;
}

}  // namespace diskcurv
