#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "diskcurv/operators.hpp"
#include "diskcurv/snapshot.hpp"
#include "test_util.hpp"

using namespace diskcurv;
using testutil::kPi;

namespace {

double max_abs_on_rings(const ScalarField& f, int j_lo, int j_hi) {
  double m = 0.0;
  for (int j = j_lo; j <= j_hi; ++j)
    for (int i = 0; i < f.grid.n_theta; ++i) m = std::max(m, std::abs(f.at(j, i)));
  return m;
}

}  // namespace

TEST_CASE("laplacian of r^2 is 4, exact away from the pole closure") {
  Grid g(64, 64);
  const ScalarField u = ScalarField::from_function(g, [](double r, double) { return r * r; });
  const ScalarField lap = laplacian(u);
  double err = 0.0;
  // ring 0 carries the ring-mean pole closure (O(1) for radial data); the
  // stencil is exact for quadratics on every other ring including the
  // one-sided boundary row.
  for (int j = 1; j < g.n_r; ++j)
    for (int i = 0; i < g.n_theta; ++i) err = std::max(err, std::abs(lap.at(j, i) - 4.0));
  CHECK(err <= 1e-6);
}

// Slopes are measured on the fixed annulus r >= 1/4: the u_r/r and
// u_thth/r^2 truncation terms scale like h^2/r, so the sup over rings
// adjacent to the pole decays at first order only for any 3-point stencil.
TEST_CASE("laplacian of the harmonic r cos theta vanishes at second order") {
  std::vector<double> errs;
  for (int n : {32, 64, 128}) {
    Grid g(n, 2 * n);
    const ScalarField u =
        ScalarField::from_function(g, [](double r, double th) { return r * std::cos(th); });
    errs.push_back(max_abs_on_rings(laplacian(u), g.n_r / 4, g.n_r - 2));
  }
  CHECK(errs.back() <= 1e-3);
  CHECK(testutil::refinement_slope(errs) >= 1.9);
}

TEST_CASE("laplacian refinement order >= 2 on r^3 cos 3theta") {
  std::vector<double> errs;
  for (int n : {32, 64, 128}) {
    Grid g(n, 2 * n);
    const ScalarField u = ScalarField::from_function(
        g, [](double r, double th) { return r * r * r * std::cos(3.0 * th); });
    errs.push_back(max_abs_on_rings(laplacian(u), g.n_r / 4, g.n_r - 2));
  }
  CHECK(testutil::refinement_slope(errs) >= 1.9);
}

TEST_CASE("normal derivative examples") {
  Grid g(64, 64);
  SUBCASE("r^2 gives exactly 2") {
    const ScalarField u = ScalarField::from_function(g, [](double r, double) { return r * r; });
    const BoundaryField nd = normal_derivative(u);
    CHECK(nd.max_abs() == doctest::Approx(2.0).epsilon(1e-12));
    for (int i = 0; i < g.n_theta; ++i) CHECK(nd.at(i) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("constants give 0") {
    const ScalarField u(g, 3.25);
    CHECK(normal_derivative(u).max_abs() <= 1e-14);
  }
  SUBCASE("hyperbolic bubble trace, mu = 2") {
    // u = 2 log(2 mu/(mu^2 - r^2)), u'(1) = 4/(mu^2-1) = 4/3
    std::vector<double> errs;
    for (int n : {32, 64, 128}) {
      Grid gn(n, 16);
      const ScalarField u = ScalarField::from_function(
          gn, [](double r, double) { return 2.0 * std::log(4.0 / (4.0 - r * r)); });
      const BoundaryField nd = normal_derivative(u);
      double err = 0.0;
      for (int i = 0; i < gn.n_theta; ++i) err = std::max(err, std::abs(nd.at(i) - 4.0 / 3.0));
      errs.push_back(err);
    }
    CHECK(errs.back() <= 1e-4);
    CHECK(testutil::refinement_slope(errs) >= 1.9);
  }
}

TEST_CASE("disk quadrature") {
  SUBCASE("area of the disk, exact by construction") {
    Grid g(128, 64);
    CHECK(integrate_disk(ScalarField(g, 1.0)) == doctest::Approx(kPi).epsilon(1e-12));
  }
  SUBCASE("odd mode integrates to zero") {
    Grid g(128, 64);
    const ScalarField f =
        ScalarField::from_function(g, [](double r, double th) { return r * std::cos(th); });
    CHECK(std::abs(integrate_disk(f)) <= 1e-12);
  }
  SUBCASE("bubble area integrand: 8 pi mu^2 (C), (C) = 1/(2 mu^2(mu^2-1))") {
    // mu = 2: integral = 4 pi / 3
    Grid g(256, 16);
    const ScalarField f = ScalarField::from_function(
        g, [](double r, double) { return 16.0 / ((4.0 - r * r) * (4.0 - r * r)); });
    CHECK(integrate_disk(f) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-4));
  }
}

TEST_CASE("boundary quadrature") {
  Grid g(16, 64);
  SUBCASE("circumference") {
    CHECK(integrate_boundary(BoundaryField(g, 1.0)) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
  }
  SUBCASE("pure mode") {
    const BoundaryField f =
        BoundaryField::from_function(g, [](double th) { return std::cos(3.0 * th); });
    CHECK(std::abs(integrate_boundary(f)) <= 1e-13);
  }
  SUBCASE("exponential of cos: Bessel oracle at spectral accuracy") {
    const BoundaryField f =
        BoundaryField::from_function(g, [](double th) { return std::exp(0.5 * std::cos(th)); });
    const double exact = 2.0 * kPi * testutil::bessel_I0(0.5);
    CHECK(integrate_boundary(f) == doctest::Approx(exact).epsilon(1e-10));
  }
}

TEST_CASE("gradient_sq examples") {
  SUBCASE("linear field has unit gradient") {
    Grid g(128, 256);
    const ScalarField u =
        ScalarField::from_function(g, [](double r, double th) { return r * std::cos(th); });
    const ScalarField gs = gradient_sq(u);
    double err = 0.0;
    for (int j = 0; j < g.n_r; ++j)
      for (int i = 0; i < g.n_theta; ++i) err = std::max(err, std::abs(gs.at(j, i) - 1.0));
    CHECK(err <= 1e-3);
  }
  SUBCASE("constant field") {
    Grid g(32, 32);
    CHECK(gradient_sq(ScalarField(g, 7.0)).max_abs() <= 1e-14);
  }
  SUBCASE("Dirichlet energy of the radial bubble, mu = sqrt(2)") {
    // |grad phi_mu|^2 = 16 r^2/(mu^2-r^2)^2; the closed form is
    // 16 pi [1/(mu^2-1) + ln(1 - 1/mu^2)]. (The appendix formula 32 pi (C)
    // drops the r^2 of the integrand; see the acceptance suite notes.)
    Grid g(512, 16);
    const double mu2 = 2.0;
    const ScalarField u = ScalarField::from_function(
        g, [&](double r, double) { return 2.0 * std::log(2.0 * std::sqrt(mu2) / (mu2 - r * r)); });
    const double exact = 16.0 * kPi * (1.0 / (mu2 - 1.0) + std::log(1.0 - 1.0 / mu2));
    CHECK(integrate_disk(gradient_sq(u)) == doctest::Approx(exact).epsilon(1e-3));
  }
}

TEST_CASE("operators are linear") {
  Grid g(32, 64);
  std::mt19937_64 rng(7);
  const ScalarField u = testutil::random_smooth_field(g, rng);
  const ScalarField v = testutil::random_smooth_field(g, rng);
  const double a = 1.7, b = -0.4;
  ScalarField w(g);
  for (size_t t = 0; t < w.data.size(); ++t) w.data[t] = a * u.data[t] + b * v.data[t];

  const ScalarField Lu = laplacian(u), Lv = laplacian(v), Lw = laplacian(w);
  double err = 0.0;
  for (size_t t = 0; t < w.data.size(); ++t)
    err = std::max(err, std::abs(Lw.data[t] - a * Lu.data[t] - b * Lv.data[t]));
  CHECK(err <= 1e-9 * (1.0 + Lw.max_abs()));

  const BoundaryField Nu = normal_derivative(u), Nv = normal_derivative(v),
                      Nw = normal_derivative(w);
  err = 0.0;
  for (int i = 0; i < g.n_theta; ++i)
    err = std::max(err, std::abs(Nw.at(i) - a * Nu.at(i) - b * Nv.at(i)));
  CHECK(err <= 1e-10 * (1.0 + Nw.max_abs()));
}

TEST_CASE("discrete Green identity converges on polynomial pairs") {
  // | int (lap u) v + int grad u . grad v - oint (d_nu u) v | -> 0, order >= 1.
  auto green_defect = [](int n) {
    Grid g(n, 2 * n);
    const ScalarField u = ScalarField::from_function(
        g, [](double r, double th) { return r * r + r * r * r * std::cos(3.0 * th); });
    const ScalarField v = ScalarField::from_function(
        g, [](double r, double th) { return 1.0 + r * r * std::cos(2.0 * th); });
    ScalarField lap_u_v = laplacian(u);
    for (size_t t = 0; t < lap_u_v.data.size(); ++t) lap_u_v.data[t] *= v.data[t];
    // polarization of gradient_sq gives grad u . grad v
    ScalarField upv(g), umv(g);
    for (size_t t = 0; t < upv.data.size(); ++t) {
      upv.data[t] = u.data[t] + v.data[t];
      umv.data[t] = u.data[t] - v.data[t];
    }
    ScalarField dot(g);
    const ScalarField gp = gradient_sq(upv), gm = gradient_sq(umv);
    for (size_t t = 0; t < dot.data.size(); ++t) dot.data[t] = 0.25 * (gp.data[t] - gm.data[t]);
    BoundaryField ndv = normal_derivative(u);
    const int jb = g.boundary_ring();
    for (int i = 0; i < g.n_theta; ++i) ndv.at(i) *= v.at(jb, i);
    return std::abs(integrate_disk(lap_u_v) + integrate_disk(dot) - integrate_boundary(ndv));
  };
  std::vector<double> errs{green_defect(32), green_defect(64), green_defect(128)};
  CHECK(testutil::refinement_slope(errs) >= 0.9);
  CHECK(errs.back() < errs.front());
}

TEST_CASE("Dirichlet form matches the quadrature of |grad u|^2 and is adjoint-consistent") {
  Grid g(96, 128);
  std::mt19937_64 rng(11);
  const ScalarField u = testutil::random_smooth_field(g, rng);
  const ScalarField v = testutil::random_smooth_field(g, rng);
  SUBCASE("symmetry and value") {
    CHECK(dirichlet_form(u, v) == doctest::Approx(dirichlet_form(v, u)).epsilon(1e-12));
    const double by_quadrature = integrate_disk(gradient_sq(u));
    CHECK(dirichlet_form(u, u) == doctest::Approx(by_quadrature).epsilon(2e-2));
  }
  SUBCASE("dirichlet_grad is the exact gradient of the quadratic form") {
    const std::vector<double> Au = dirichlet_grad(u);
    double pairing = 0.0;
    for (size_t t = 0; t < Au.size(); ++t) pairing += Au[t] * v.data[t];
    CHECK(pairing == doctest::Approx(dirichlet_form(u, v)).epsilon(1e-11));
  }
}

TEST_CASE("snapshot round-trip is exact") {
  Grid g(16, 16);
  std::mt19937_64 rng(3);
  const ScalarField u = testutil::random_smooth_field(g, rng, 3.7);
  const std::string text = format_snapshot(u);
  const ScalarField back = parse_snapshot(text);
  REQUIRE(back.grid == g);
  for (size_t t = 0; t < u.data.size(); ++t) CHECK(back.data[t] == u.data[t]);
  CHECK(format_snapshot(back) == text);

  const auto path = std::filesystem::temp_directory_path() / "diskcurv_snapshot_test.snap";
  write_snapshot(path, u);
  const ScalarField from_file = read_snapshot(path);
  for (size_t t = 0; t < u.data.size(); ++t) CHECK(from_file.data[t] == u.data[t]);
  std::filesystem::remove(path);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid(4, 64), Error);
  CHECK_THROWS_AS(Grid(64, 7), Error);
  CHECK_THROWS_AS(Grid(64, 33), Error);
}
