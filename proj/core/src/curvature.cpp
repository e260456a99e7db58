#include "diskcurv/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace diskcurv {

namespace {

double eval_radial_poly(const std::vector<double>& coeffs, double r) {
  const double r2 = r * r;
  double acc = 0.0;
  for (size_t m = coeffs.size(); m-- > 0;) acc = acc * r2 + coeffs[m];
  return acc;
}

void validate_group_invariants(const CurvatureSpec& spec, const ScalarField& K,
                               const BoundaryField& h) {
  const SymmetryGroup& G = spec.group;
  if (G.kind == SymmetryGroup::Kind::Trivial) return;
  if (G.kind == SymmetryGroup::Kind::Cyclic &&
      spec.h_def.kind == BoundaryCurvature::Kind::FourierCosSin) {
    for (const auto& [m, cs] : spec.h_def.modes) {
      if ((cs.first != 0.0 || cs.second != 0.0) && m % G.k != 0) {
        throw Error(ErrorCode::SymmetryViolation,
                    "h has Fourier mode " + std::to_string(m) + " not divisible by k");
      }
    }
  }
  if (G.kind == SymmetryGroup::Kind::FullRotation) {
    if (spec.h_def.kind == BoundaryCurvature::Kind::FourierCosSin) {
      for (const auto& [m, cs] : spec.h_def.modes) {
        if (cs.first != 0.0 || cs.second != 0.0) {
          throw Error(ErrorCode::SymmetryViolation, "FullRotation requires h with mode 0 only");
        }
      }
    }
  }
  // Tabulated (or any) data: invariance under the group action to tolerance.
  const double tol = 1e-10;
  const ScalarField Ks = symmetrize(K, G);
  const BoundaryField hs = symmetrize(h, G);
  double dK = 0.0, dh = 0.0;
  for (size_t t = 0; t < K.data.size(); ++t) dK = std::max(dK, std::abs(K.data[t] - Ks.data[t]));
  for (size_t t = 0; t < h.data.size(); ++t) dh = std::max(dh, std::abs(h.data[t] - hs.data[t]));
  const double scale = 1.0 + std::max(K.max_abs(), h.max_abs());
  if (dK > tol * scale || dh > tol * scale) {
    throw Error(ErrorCode::SymmetryViolation, "curvature data is not G-symmetric");
  }
}

}  // namespace

std::pair<ScalarField, BoundaryField> eval_curvatures(const CurvatureSpec& spec, const Grid& grid) {
  ScalarField K(grid);
  switch (spec.K_def.kind) {
    case InteriorCurvature::Kind::Constant:
      for (double& v : K.data) v = spec.K_def.value;
      break;
    case InteriorCurvature::Kind::RadialPolynomial:
      for (int j = 0; j < grid.n_r; ++j) {
        const double val = eval_radial_poly(spec.K_def.coeffs, grid.radius(j));
        for (int i = 0; i < grid.n_theta; ++i) K.at(j, i) = val;
      }
      break;
    case InteriorCurvature::Kind::Tabulated:
      if (!spec.K_def.table || spec.K_def.table->grid != grid) {
        throw Error(ErrorCode::ShapeMismatch, "tabulated K does not match the solver grid");
      }
      K = *spec.K_def.table;
      break;
  }

  BoundaryField h(grid);
  switch (spec.h_def.kind) {
    case BoundaryCurvature::Kind::Constant:
      for (double& v : h.data) v = spec.h_def.value;
      break;
    case BoundaryCurvature::Kind::FourierCosSin:
      for (int i = 0; i < grid.n_theta; ++i) {
        const double th = grid.theta(i);
        double val = spec.h_def.fourier_constant;
        for (const auto& [m, cs] : spec.h_def.modes) {
          val += cs.first * std::cos(m * th) + cs.second * std::sin(m * th);
        }
        h.at(i) = val;
      }
      break;
    case BoundaryCurvature::Kind::Tabulated:
      if (!spec.h_def.table || spec.h_def.table->grid != grid) {
        throw Error(ErrorCode::ShapeMismatch, "tabulated h does not match the solver grid");
      }
      h = *spec.h_def.table;
      break;
  }

  validate_group_invariants(spec, K, h);
  return {std::move(K), std::move(h)};
}

BoundaryField spectral_theta_derivative(const BoundaryField& f) {
  const int n = f.grid.n_theta;
  const double two_over_n = 2.0 / n;
  // Direct real DFT; O(n^2) but n <= a few thousand here. The mode-0 and
  // Nyquist derivatives vanish on the nodes.
  const int mmax = n / 2 - 1;
  std::vector<double> a(static_cast<size_t>(mmax) + 1, 0.0), b(static_cast<size_t>(mmax) + 1, 0.0);
  const double dth = f.grid.dtheta();
  for (int m = 1; m <= mmax; ++m) {
    double am = 0.0, bm = 0.0;
    for (int i = 0; i < n; ++i) {
      am += f.at(i) * std::cos(m * i * dth);
      bm += f.at(i) * std::sin(m * i * dth);
    }
    a[static_cast<size_t>(m)] = am * two_over_n;
    b[static_cast<size_t>(m)] = bm * two_over_n;
  }
  BoundaryField out(f.grid);
  for (int i = 0; i < n; ++i) {
    double v = 0.0;
    for (int m = 1; m <= mmax; ++m) {
      v += m * (-a[static_cast<size_t>(m)] * std::sin(m * i * dth) +
                b[static_cast<size_t>(m)] * std::cos(m * i * dth));
    }
    out.at(i) = v;
  }
  return out;
}

DeficitProfile deficit(const ScalarField& K, const BoundaryField& h) {
  require_same_grid(K.grid, h.grid, "deficit");
  const int jb = K.grid.boundary_ring();
  BoundaryField values(K.grid);
  for (int i = 0; i < K.grid.n_theta; ++i) {
    const double kb = K.at(jb, i);
    if (!(kb < 0.0)) {
      throw Error(ErrorCode::DegenerateCurvature,
                  "deficit requires K < 0 at every boundary node");
    }
    values.at(i) = h.at(i) / std::sqrt(-kb);
  }
  DeficitProfile out;
  out.tangential_derivative = spectral_theta_derivative(values);
  out.values = std::move(values);
  return out;
}

HypothesisReport check_hypotheses(const CurvatureSpec& spec, const Grid& grid, double tol) {
  auto [K, h] = eval_curvatures(spec, grid);
  HypothesisReport rep;

  double maxK_int = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid.n_r; ++j)
    for (int i = 0; i < grid.n_theta; ++i) maxK_int = std::max(maxK_int, K.at(j, i));
  const int jb = grid.boundary_ring();
  double maxK_bdy = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.n_theta; ++i) maxK_bdy = std::max(maxK_bdy, K.at(jb, i));
  double maxK_annulus = -std::numeric_limits<double>::infinity();
  const int j_annulus = std::max(0, static_cast<int>(0.9 * grid.n_r) - 1);
  for (int j = j_annulus; j < grid.n_r; ++j)
    for (int i = 0; i < grid.n_theta; ++i) maxK_annulus = std::max(maxK_annulus, K.at(j, i));

  rep.max_K_interior = maxK_int;
  rep.max_K_boundary = maxK_bdy;
  rep.k_nonpositive = maxK_int <= 0.0;
  rep.k_negative_annulus = maxK_annulus < 0.0;
  rep.h1 = rep.k_nonpositive && maxK_bdy < 0.0;

  if (!(maxK_bdy < 0.0)) {
    // Deficit undefined; H2/H3 reported as failed with an empty witness set.
    rep.h2 = false;
    rep.h3 = false;
  } else {
    DeficitProfile D = deficit(K, h);
    rep.max_deficit = D.values.max();
    rep.h2 = rep.max_deficit > 1.0;
    const double band = tol > 0.0 ? tol : 1e-6 * (1.0 + D.values.max_abs());
    bool violated = false;
    for (int i = 0; i < grid.n_theta; ++i) {
      if (std::abs(D.values.at(i) - 1.0) <= band) {
        rep.deficit_one_angles.push_back(grid.theta(i));
        if (std::abs(D.tangential_derivative.at(i)) <= band) {
          rep.h3_candidate_angles.push_back(grid.theta(i));
          violated = true;
        }
      }
    }
    rep.h3 = !violated;
  }

  rep.g_applicable = spec.group.kind != SymmetryGroup::Kind::Trivial;
  if (rep.g_applicable) {
    const ScalarField Ks = symmetrize(K, spec.group);
    const BoundaryField hs = symmetrize(h, spec.group);
    double dK = 0.0, dh = 0.0;
    for (size_t t = 0; t < K.data.size(); ++t) dK = std::max(dK, std::abs(K.data[t] - Ks.data[t]));
    for (size_t t = 0; t < h.data.size(); ++t) dh = std::max(dh, std::abs(h.data[t] - hs.data[t]));
    const double scale = 1.0 + std::max(K.max_abs(), h.max_abs());
    rep.g_sym = dK <= 1e-10 * scale && dh <= 1e-10 * scale;
  } else {
    rep.g_sym = true;  // not applicable
  }
  return rep;
}

std::pair<ScalarField, BoundaryField> rescale_curvatures(const ScalarField& K,
                                                         const BoundaryField& h, double lambda) {
  require_same_grid(K.grid, h.grid, "rescale_curvatures");
  if (!(lambda > 0.0)) throw Error(ErrorCode::NonPositiveLambda, "lambda must be > 0");
  ScalarField K2 = K;
  for (double& v : K2.data) v *= lambda * lambda;
  BoundaryField h2 = h;
  for (double& v : h2.data) v *= lambda;
  return {std::move(K2), std::move(h2)};
}

ScalarField symmetrize(const ScalarField& f, const SymmetryGroup& G) {
  const Grid& g = f.grid;
  switch (G.kind) {
    case SymmetryGroup::Kind::Trivial:
      return f;
    case SymmetryGroup::Kind::FullRotation: {
      ScalarField out(g);
      for (int j = 0; j < g.n_r; ++j) {
        double acc = 0.0;
        for (int i = 0; i < g.n_theta; ++i) acc += f.at(j, i);
        const double mean = acc / g.n_theta;
        for (int i = 0; i < g.n_theta; ++i) out.at(j, i) = mean;
      }
      return out;
    }
    case SymmetryGroup::Kind::Cyclic: {
      if (g.n_theta % G.k != 0) {
        throw Error(ErrorCode::ResolutionNotDivisible,
                    "n_theta must be divisible by k for Cyclic(k)");
      }
      const int shift = g.n_theta / G.k;
      ScalarField out(g);
      for (int j = 0; j < g.n_r; ++j) {
        for (int i = 0; i < g.n_theta; ++i) {
          double acc = 0.0;
          for (int m = 0; m < G.k; ++m) acc += f.at(j, (i + m * shift) % g.n_theta);
          out.at(j, i) = acc / G.k;
        }
      }
      return out;
    }
  }
  return f;
}

BoundaryField symmetrize(const BoundaryField& f, const SymmetryGroup& G) {
  const Grid& g = f.grid;
  switch (G.kind) {
    case SymmetryGroup::Kind::Trivial:
      return f;
    case SymmetryGroup::Kind::FullRotation: {
      double acc = 0.0;
      for (int i = 0; i < g.n_theta; ++i) acc += f.at(i);
      BoundaryField out(g, acc / g.n_theta);
      return out;
    }
    case SymmetryGroup::Kind::Cyclic: {
      if (g.n_theta % G.k != 0) {
        throw Error(ErrorCode::ResolutionNotDivisible,
                    "n_theta must be divisible by k for Cyclic(k)");
      }
      const int shift = g.n_theta / G.k;
      BoundaryField out(g);
      for (int i = 0; i < g.n_theta; ++i) {
        double acc = 0.0;
        for (int m = 0; m < G.k; ++m) acc += f.at((i + m * shift) % g.n_theta);
        out.at(i) = acc / G.k;
      }
      return out;
    }
  }
  return f;
}

}  // namespace diskcurv
