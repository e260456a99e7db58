#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "diskcurv/curvature.hpp"
#include "test_util.hpp"

using namespace diskcurv;
using testutil::kPi;

TEST_CASE("eval_curvatures") {
  Grid g(32, 64);
  SUBCASE("constant K") {
    CurvatureSpec spec{InteriorCurvature::constant(-1.0), BoundaryCurvature::constant(1.0),
                       SymmetryGroup::trivial()};
    auto [K, h] = eval_curvatures(spec, g);
    CHECK(K.max_abs() == 1.0);
    CHECK(K.at(5, 7) == -1.0);
  }
  SUBCASE("radial polynomial in r^2") {
    CurvatureSpec spec{InteriorCurvature::radial_polynomial({-1.0, -0.5}),
                       BoundaryCurvature::constant(1.0), SymmetryGroup::trivial()};
    auto [K, h] = eval_curvatures(spec, g);
    const int jb = g.boundary_ring();
    CHECK(K.at(jb, 0) == doctest::Approx(-1.5).epsilon(1e-14));
    const double r = g.radius(10);
    CHECK(K.at(10, 3) == doctest::Approx(-1.0 - 0.5 * r * r).epsilon(1e-14));
  }
  SUBCASE("Fourier h with constant part") {
    CurvatureSpec spec{InteriorCurvature::constant(-1.0),
                       BoundaryCurvature::fourier(1.8, {{2, {0.3, 0.0}}}),
                       SymmetryGroup::cyclic(2)};
    auto [K, h] = eval_curvatures(spec, g);
    CHECK(h.at(0) == doctest::Approx(2.1).epsilon(1e-14));
    CHECK(h.at(g.n_theta / 4) == doctest::Approx(1.5).epsilon(1e-12));
  }
  SUBCASE("tabulated shape mismatch") {
    Grid other(16, 32);
    CurvatureSpec spec{InteriorCurvature::tabulated(ScalarField(other, -1.0)),
                       BoundaryCurvature::constant(1.0), SymmetryGroup::trivial()};
    CHECK_THROWS_AS((void)eval_curvatures(spec, g), Error);
  }
  SUBCASE("cyclic symmetry violation is rejected") {
    CurvatureSpec spec{InteriorCurvature::constant(-1.0),
                       BoundaryCurvature::fourier(1.8, {{3, {0.3, 0.0}}}),
                       SymmetryGroup::cyclic(2)};
    CHECK_THROWS_AS((void)eval_curvatures(spec, g), Error);
  }
}

TEST_CASE("deficit") {
  Grid g(32, 64);
  SUBCASE("constants") {
    ScalarField K(g, -4.0);
    BoundaryField h(g, 3.0);
    const DeficitProfile D = deficit(K, h);
    for (int i = 0; i < g.n_theta; ++i) {
      CHECK(D.values.at(i) == doctest::Approx(1.5).epsilon(1e-14));
      CHECK(std::abs(D.tangential_derivative.at(i)) <= 1e-12);
    }
  }
  SUBCASE("K = -1 identity and spectral derivative") {
    ScalarField K(g, -1.0);
    const BoundaryField h =
        BoundaryField::from_function(g, [](double th) { return 1.8 + 0.3 * std::cos(2.0 * th); });
    const DeficitProfile D = deficit(K, h);
    for (int i = 0; i < g.n_theta; ++i) {
      CHECK(D.values.at(i) == doctest::Approx(h.at(i)).epsilon(1e-14));
      CHECK(D.tangential_derivative.at(i) ==
            doctest::Approx(-0.6 * std::sin(2.0 * g.theta(i))).epsilon(1e-10));
    }
  }
  SUBCASE("derivative matches centered finite differences on random band-limited h") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> coef(-0.2, 0.2);
    std::vector<double> cc(6), cs(6);
    for (double& v : cc) v = coef(rng);
    for (double& v : cs) v = coef(rng);
    const BoundaryField h = BoundaryField::from_function(g, [&](double th) {
      double v = 2.0;
      for (int m = 1; m <= 5; ++m)
        v += cc[static_cast<size_t>(m)] * std::cos(m * th) +
             cs[static_cast<size_t>(m)] * std::sin(m * th);
      return v;
    });
    ScalarField K(g, -1.0);
    const DeficitProfile D = deficit(K, h);
    const double dth = g.dtheta();
    double err = 0.0;
    for (int i = 0; i < g.n_theta; ++i) {
      const int ip = (i + 1) % g.n_theta, im = (i + g.n_theta - 1) % g.n_theta;
      const double fd = (D.values.at(ip) - D.values.at(im)) / (2.0 * dth);
      err = std::max(err, std::abs(fd - D.tangential_derivative.at(i)));
    }
    CHECK(err <= dth * dth * 30.0);  // O(dth^2) central-difference defect
  }
  SUBCASE("derivative has zero mean") {
    std::mt19937_64 rng(1);
    ScalarField K(g, -2.0);
    const BoundaryField h =
        BoundaryField::from_function(g, [](double th) { return 2.0 + 0.4 * std::sin(3.0 * th); });
    const DeficitProfile D = deficit(K, h);
    double acc = 0.0;
    for (int i = 0; i < g.n_theta; ++i) acc += D.tangential_derivative.at(i);
    CHECK(std::abs(acc * g.dtheta()) <= 1e-12);
  }
  SUBCASE("degenerate curvature rejected") {
    ScalarField K(g, -1.0);
    K.at(g.boundary_ring(), 3) = 0.0;
    BoundaryField h(g, 1.0);
    CHECK_THROWS_AS((void)deficit(K, h), Error);
  }
}

TEST_CASE("check_hypotheses") {
  Grid g(32, 64);
  SUBCASE("all-pass constants") {
    CurvatureSpec spec{InteriorCurvature::constant(-1.0), BoundaryCurvature::constant(1.25),
                       SymmetryGroup::full_rotation()};
    const HypothesisReport rep = check_hypotheses(spec, g, 0.0);
    CHECK(rep.h1);
    CHECK(rep.h2);
    CHECK(rep.max_deficit == doctest::Approx(1.25).epsilon(1e-14));
    CHECK(rep.h3);
    CHECK(rep.h3_candidate_angles.empty());
    CHECK(rep.g_applicable);
    CHECK(rep.g_sym);
  }
  SUBCASE("H2 fails at the threshold deficit") {
    CurvatureSpec spec{InteriorCurvature::constant(-1.0), BoundaryCurvature::constant(1.0),
                       SymmetryGroup::full_rotation()};
    const HypothesisReport rep = check_hypotheses(spec, g, 0.0);
    CHECK(rep.h1);
    CHECK_FALSE(rep.h2);
  }
  SUBCASE("H3 holds when the deficit crosses 1 transversally") {
    // D = 1 + 0.5 cos(theta): D = 1 at +-pi/2 where D_tau = -+0.5 != 0
    CurvatureSpec spec{InteriorCurvature::constant(-1.0),
                       BoundaryCurvature::fourier(1.0, {{1, {0.5, 0.0}}}),
                       SymmetryGroup::trivial()};
    const HypothesisReport rep = check_hypotheses(spec, g, 0.0);
    CHECK(rep.h2);
    CHECK(rep.h3);
    CHECK_FALSE(rep.g_applicable);
    // the theta-grid contains +-pi/2, so the D = 1 witnesses are seen
    CHECK(!rep.deficit_one_angles.empty());
  }
  SUBCASE("H3 flagged when D = 1 with vanishing derivative") {
    // h = 1 + 0.25 (1 + cos 2 theta): at +-pi/2, D = 1 and D_tau = 0
    CurvatureSpec spec{InteriorCurvature::constant(-1.0),
                       BoundaryCurvature::fourier(1.25, {{2, {0.25, 0.0}}}),
                       SymmetryGroup::cyclic(2)};
    const HypothesisReport rep = check_hypotheses(spec, g, 0.0);
    CHECK(rep.h2);
    CHECK_FALSE(rep.h3);
    CHECK(!rep.h3_candidate_angles.empty());
  }
  SUBCASE("nonexistence regime of the scaling theorem reports H2 = false") {
    // K <= -c0^2, h <= c0 gives D <= 1 pointwise
    const double c0 = 1.7;
    CurvatureSpec spec{InteriorCurvature::radial_polynomial({-c0 * c0, -0.3}),
                       BoundaryCurvature::fourier(0.8 * c0, {{2, {0.1 * c0, 0.0}}}),
                       SymmetryGroup::cyclic(2)};
    const HypothesisReport rep = check_hypotheses(spec, g, 0.0);
    CHECK(rep.h1);
    CHECK_FALSE(rep.h2);
  }
}

TEST_CASE("rescale_curvatures") {
  Grid g(16, 32);
  ScalarField K(g, -1.0);
  BoundaryField h(g, 1.25);
  SUBCASE("definition and deficit invariance") {
    auto [K2, h2] = rescale_curvatures(K, h, 2.0);
    CHECK(K2.at(3, 5) == doctest::Approx(-4.0).epsilon(1e-15));
    CHECK(h2.at(7) == doctest::Approx(2.5).epsilon(1e-15));
    const DeficitProfile D1 = deficit(K, h);
    const DeficitProfile D2 = deficit(K2, h2);
    for (int i = 0; i < g.n_theta; ++i)
      CHECK(D2.values.at(i) == doctest::Approx(D1.values.at(i)).epsilon(1e-14));
  }
  SUBCASE("lambda = 1 is the identity") {
    auto [K2, h2] = rescale_curvatures(K, h, 1.0);
    CHECK(K2.at(0, 0) == K.at(0, 0));
    CHECK(h2.at(0) == h.at(0));
  }
  SUBCASE("deficit invariance for nonconstant data") {
    const BoundaryField hv =
        BoundaryField::from_function(g, [](double th) { return 1.5 + 0.3 * std::cos(4.0 * th); });
    const ScalarField Kv = ScalarField::from_function(
        g, [](double r, double) { return -1.0 - 0.5 * r * r; });
    auto [K2, h2] = rescale_curvatures(Kv, hv, 3.7);
    const DeficitProfile D1 = deficit(Kv, hv);
    const DeficitProfile D2 = deficit(K2, h2);
    for (int i = 0; i < g.n_theta; ++i)
      CHECK(D2.values.at(i) == doctest::Approx(D1.values.at(i)).epsilon(1e-13));
  }
  SUBCASE("nonpositive lambda rejected") {
    CHECK_THROWS_AS((void)rescale_curvatures(K, h, 0.0), Error);
    CHECK_THROWS_AS((void)rescale_curvatures(K, h, -2.0), Error);
  }
}

TEST_CASE("symmetrize") {
  Grid g(16, 32);
  std::mt19937_64 rng(5);
  SUBCASE("k-symmetric fields are fixed points") {
    const ScalarField f = ScalarField::from_function(
        g, [](double r, double th) { return r * r + 0.3 * std::cos(4.0 * th); });
    const ScalarField p = symmetrize(f, SymmetryGroup::cyclic(4));
    for (size_t t = 0; t < f.data.size(); ++t)
      CHECK(p.data[t] == doctest::Approx(f.data[t]).epsilon(1e-13));
  }
  SUBCASE("odd mode is annihilated by Cyclic(2)") {
    const ScalarField f =
        ScalarField::from_function(g, [](double r, double th) { return r * std::cos(th); });
    CHECK(symmetrize(f, SymmetryGroup::cyclic(2)).max_abs() <= 1e-14);
  }
  SUBCASE("FullRotation projects to per-ring means, idempotent") {
    const ScalarField f = testutil::random_smooth_field(g, rng);
    const ScalarField p = symmetrize(f, SymmetryGroup::full_rotation());
    for (int j = 0; j < g.n_r; ++j) {
      double acc = 0.0;
      for (int i = 0; i < g.n_theta; ++i) acc += f.at(j, i);
      const double mean = acc / g.n_theta;
      for (int i = 0; i < g.n_theta; ++i) CHECK(p.at(j, i) == doctest::Approx(mean).epsilon(1e-14));
    }
    const ScalarField pp = symmetrize(p, SymmetryGroup::full_rotation());
    double drift = 0.0;
    for (size_t t = 0; t < p.data.size(); ++t)
      drift = std::max(drift, std::abs(pp.data[t] - p.data[t]));
    CHECK(drift <= 1e-12 * f.max_abs());
  }
  SUBCASE("idempotent linear projection for Cyclic(3) incl. boundary fields") {
    Grid g3(16, 48);
    std::mt19937_64 rng3(9);
    const ScalarField f = testutil::random_smooth_field(g3, rng3, 2.0, 6);
    const ScalarField p = symmetrize(f, SymmetryGroup::cyclic(3));
    const ScalarField pp = symmetrize(p, SymmetryGroup::cyclic(3));
    double drift = 0.0;
    for (size_t t = 0; t < p.data.size(); ++t)
      drift = std::max(drift, std::abs(pp.data[t] - p.data[t]));
    CHECK(drift <= 1e-12 * f.max_abs());

    BoundaryField b = BoundaryField::from_function(
        g3, [](double th) { return std::sin(th) + std::cos(3.0 * th); });
    const BoundaryField pb = symmetrize(b, SymmetryGroup::cyclic(3));
    for (int i = 0; i < g3.n_theta; ++i)
      CHECK(pb.at(i) == doctest::Approx(std::cos(3.0 * g3.theta(i))).epsilon(1e-12));
  }
  SUBCASE("resolution must divide k") {
    CHECK_THROWS_AS((void)symmetrize(ScalarField(g, 1.0), SymmetryGroup::cyclic(5)), Error);
  }
}
