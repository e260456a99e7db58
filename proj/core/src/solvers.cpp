#include "diskcurv/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "assembly.hpp"
#include "diskcurv/bubbles.hpp"
#include "diskcurv/operators.hpp"

namespace diskcurv {

namespace detail2 {

using detail::SectorOps;
using detail::SpMat;
using Solver = Eigen::SimplicialLDLT<detail::SpMat, Eigen::Lower>;

Eigen::VectorXd gradient_vector(const SectorOps& ops, const Residual& res) {
  // weighted residual = exact gradient of the normalized perturbed energy
  Eigen::VectorXd g(ops.size());
  const int jb = ops.m - 1;
  for (int j = 0; j < jb; ++j)
    for (int i = 0; i < ops.s; ++i)
      g[ops.idx(j, i)] = ops.w[static_cast<size_t>(j)] * ops.dth * res.interior.at(j, i);
  for (int i = 0; i < ops.s; ++i) g[ops.idx(jb, i)] = ops.dth * res.boundary.at(i);
  return g;
}

ScalarField project(const ScalarField& u, const SymmetryGroup& G) { return symmetrize(u, G); }

double gb_residual(const ScalarField& u, const PerturbedCoeffs& c) {
  bool of = false;
  ScalarField a(u.grid);
  for (size_t t = 0; t < u.data.size(); ++t)
    a.data[t] = c.K_eff.data[t] * clamped_exp(u.data[t], &of);
  BoundaryField b(u.grid);
  const int jb = u.grid.boundary_ring();
  for (int i = 0; i < u.grid.n_theta; ++i)
    b.at(i) = c.h_eff.at(i) * clamped_exp(0.5 * u.at(jb, i), &of);
  return integrate_disk(a) + integrate_boundary(b) - chi_of_coeffs(c);
}

void finalize_record(SolutionRecord& rec, const ScalarField& u, const PerturbedCoeffs& c) {
  rec.u = u;
  rec.eps = c.eps;
  const Residual res = residual(u, c);
  rec.residual_interior = res.interior_norm();
  rec.residual_boundary = res.boundary_norm();
  auto [K, h] = original_curvatures(c);
  rec.energy = energy_I(u, K, h);
  rec.gauss_bonnet_residual = gb_residual(u, c);
  rec.chi_eps = chi_of_coeffs(c);
  rec.max_u = u.max();
}

}  // namespace detail2

void SolverOptions::validate() const {
  if (!(tol_residual > 0.0)) throw Error(ErrorCode::InvalidOptions, "tol_residual must be > 0");
  if (!(damping > 0.0 && damping < 1.0))
    throw Error(ErrorCode::InvalidOptions, "damping must lie in (0,1)");
  if (max_iters < 1) throw Error(ErrorCode::InvalidOptions, "max_iters must be >= 1");
  if (!eps_schedule.empty()) {
    for (size_t s = 0; s + 1 < eps_schedule.size(); ++s) {
      if (!(eps_schedule[s] > eps_schedule[s + 1]))
        throw Error(ErrorCode::InvalidOptions, "eps_schedule must be strictly decreasing");
    }
    if (eps_schedule.back() != 0.0)
      throw Error(ErrorCode::InvalidOptions, "eps_schedule must end at 0");
  }
}

std::pair<ScalarField, BoundaryField> original_curvatures(const PerturbedCoeffs& c) {
  const double denom = 1.0 + 2.0 * c.eps;
  ScalarField K(c.K_eff.grid);
  for (size_t t = 0; t < K.data.size(); ++t)
    K.data[t] = c.K_eff.data[t] * denom / (1.0 + c.eps / 2.0);
  BoundaryField h(c.h_eff.grid);
  for (size_t t = 0; t < h.data.size(); ++t) h.data[t] = c.h_eff.data[t] * denom;
  return {std::move(K), std::move(h)};
}

SolutionRecord newton_solve(const ScalarField& u0, const PerturbedCoeffs& c,
                            const SolverOptions& opts) {
  opts.validate();
  require_same_grid(u0.grid, c.K_eff.grid, "newton_solve");
  if (!u0.all_finite()) throw Error(ErrorCode::InvalidOptions, "newton_solve: u0 not finite");
  const Grid& g = u0.grid;
  detail::SectorOps ops = detail::build_sector_ops(g, g.n_theta);
  detail2::Solver solver;
  bool analyzed = false;

  SolutionRecord rec;
  ScalarField u = detail2::project(u0, opts.group);
  Residual res = residual(u, c);
  double rnorm = res.combined_norm();

  int iter = 0;
  for (; iter < opts.max_iters; ++iter) {
    bool of = false;
    const double energy = perturbed_energy(u, c, &of);
    rec.log.push_back({iter, res.interior_norm(), res.boundary_norm(), energy, u.max(), 0.0});
    if (rnorm <= opts.tol_residual) {
      rec.converged = true;
      break;
    }

    detail::SpMat H = detail::hessian_matrix(ops, u, c);
    if (!analyzed) {
      solver.analyzePattern(H);
      analyzed = true;
    }
    solver.factorize(H);
    if (solver.info() != Eigen::Success) {
      rec.failure = "singular_jacobian";
      break;
    }
    const Eigen::VectorXd grad = detail2::gradient_vector(ops, res);
    const Eigen::VectorXd delta = solver.solve(-grad);
    if (!delta.allFinite()) {
      rec.failure = "singular_jacobian";
      break;
    }

    // backtracking on the combined residual norm
    double t = 1.0;
    bool accepted = false;
    bool saw_overflow = false;
    while (t > 1e-12) {
      ScalarField u_try = u;
      for (int n = 0; n < ops.size(); ++n) u_try.data[static_cast<size_t>(n)] += t * delta[n];
      u_try = detail2::project(u_try, opts.group);
      if (u_try.max() > 250.0) saw_overflow = true;
      const Residual res_try = residual(u_try, c);
      const double rnorm_try = res_try.combined_norm();
      if (std::isfinite(rnorm_try) && rnorm_try < (1.0 - 1e-4 * t) * rnorm) {
        u = std::move(u_try);
        res = res_try;
        rnorm = rnorm_try;
        rec.log.back().step = t;
        accepted = true;
        break;
      }
      t *= opts.damping;
    }
    if (!accepted) {
      rec.failure = saw_overflow ? "overflow" : "line_search";
      break;
    }
  }
  if (!rec.converged && rec.failure.empty()) {
    // one final tolerance check at the last iterate
    if (rnorm <= opts.tol_residual)
      rec.converged = true;
    else
      rec.failure = "max_iters";
  }
  rec.iterations = iter;
  detail2::finalize_record(rec, u, c);
  return rec;
}

SolutionRecord gradient_flow(const ScalarField& u0, const PerturbedCoeffs& c,
                             const SolverOptions& opts) {
  opts.validate();
  require_same_grid(u0.grid, c.K_eff.grid, "gradient_flow");
  const Grid& g = u0.grid;
  detail::SectorOps ops = detail::build_sector_ops(g, g.n_theta);
  // H^1 preconditioner (-Delta + id in weak form), factorized once
  detail::SpMat P = ops.A;
  for (int n = 0; n < ops.size(); ++n) P.coeffRef(n, n) += ops.mass[n];
  detail2::Solver solver;
  solver.compute(P);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::EigSolverFailure, "gradient_flow: preconditioner factorization failed");

  SolutionRecord rec;
  ScalarField u = detail2::project(u0, opts.group);
  bool of = false;
  double energy = perturbed_energy(u, c, &of);

  int iter = 0;
  for (; iter < opts.max_iters; ++iter) {
    const Residual res = residual(u, c);
    const double rnorm = res.combined_norm();
    rec.log.push_back({iter, res.interior_norm(), res.boundary_norm(), energy, u.max(), 0.0});
    if (rnorm <= opts.tol_residual) {
      rec.converged = true;
      break;
    }
    const Eigen::VectorXd grad = detail2::gradient_vector(ops, res);
    const Eigen::VectorXd w = solver.solve(grad);
    const double g2 = grad.dot(w);
    if (!(g2 > 0.0) || !w.allFinite()) {
      rec.failure = "singular_jacobian";
      break;
    }

    // Below the round-off floor of the energy the Armijo decrease cannot be
    // certified in double precision; there the step is accepted on strict
    // residual decrease instead (the energy change is below round-off, so
    // monotonicity holds to machine precision).
    const double floor = 1e-14 * (1.0 + std::abs(energy));
    double t = opts.flow_step;
    bool accepted = false;
    bool saw_overflow = false;
    while (t > 1e-14) {
      ScalarField u_try = u;
      for (int n = 0; n < ops.size(); ++n) u_try.data[static_cast<size_t>(n)] -= t * w[n];
      u_try = detail2::project(u_try, opts.group);
      bool of_try = false;
      const double e_try = perturbed_energy(u_try, c, &of_try);
      if (!of_try && std::isfinite(e_try)) {
        bool ok = e_try <= energy - 1e-4 * t * g2;
        if (!ok && std::abs(e_try - energy) <= floor) {
          ok = residual(u_try, c).combined_norm() <= (1.0 - 1e-4 * t) * rnorm;
        }
        if (ok) {
          u = std::move(u_try);
          energy = std::min(e_try, energy);
          rec.log.back().step = t;
          accepted = true;
          break;
        }
      }
      if (of_try) saw_overflow = true;
      t *= opts.damping;
    }
    if (!accepted) {
      rec.failure = saw_overflow ? "overflow" : "line_search";
      break;
    }
  }
  if (!rec.converged && rec.failure.empty()) rec.failure = "max_iters";
  rec.iterations = iter;
  detail2::finalize_record(rec, u, c);
  return rec;
}

ContinuationResult continuation_solve(const CurvatureSpec& spec, const Grid& grid,
                                      const SolverOptions& opts) {
  opts.validate();
  if (opts.eps_schedule.empty() || opts.eps_schedule.back() != 0.0)
    throw Error(ErrorCode::InvalidOptions, "continuation needs an eps schedule ending at 0");
  auto [K, h] = eval_curvatures(spec, grid);

  SolverOptions stage_opts = opts;
  stage_opts.group = spec.group;

  // Default start: deficit-matched radial bubble when (H2) holds, zero
  // otherwise. The bubble peak height follows the constant-deficit solution
  // mu = D + sqrt(D^2 - 1).
  ScalarField u0(grid, 0.0);
  const int jb = grid.boundary_ring();
  double minKb = 0.0, maxD = 0.0;
  for (int i = 0; i < grid.n_theta; ++i) minKb = std::min(minKb, K.at(jb, i));
  bool K_bdy_negative = true;
  for (int i = 0; i < grid.n_theta; ++i)
    if (!(K.at(jb, i) < 0.0)) K_bdy_negative = false;
  if (K_bdy_negative) {
    const DeficitProfile D = deficit(K, h);
    maxD = D.values.max();
    if (maxD > 1.0) {
      const double mu0 = maxD + std::sqrt(maxD * maxD - 1.0);
      ScalarField bubble = radial_bubble(mu0, grid);
      if (K.max() < 0.0) bubble = tilde(bubble, K);
      u0 = symmetrize(bubble, spec.group);
    }
  }

  ContinuationResult out;
  ScalarField u_prev = u0;
  for (double eps : opts.eps_schedule) {
    const PerturbedCoeffs c = perturbed_coeffs(K, h, eps);
    SolutionRecord rec = newton_solve(u_prev, c, stage_opts);
    if (!rec.converged) out.chain_broken = true;
    u_prev = rec.u;
    out.records.push_back(std::move(rec));
  }
  return out;
}

MountainPassSetup mountain_pass_endpoints(const ScalarField& K, const BoundaryField& h,
                                          const SymmetryGroup& G) {
  require_same_grid(K.grid, h.grid, "mountain_pass_endpoints");
  const Grid& g = K.grid;
  constexpr double kPi = std::numbers::pi;

  MountainPassSetup setup;
  setup.u_a = ScalarField(g, -8.0);
  const double Ia = energy_I(setup.u_a, K, h).I_value;
  const double maxh = h.max();
  if (!(maxh > 0.0))
    throw Error(ErrorCode::PathCollapse, "max h <= 0: no mountain-pass geometry");
  setup.delta = 2.0 * kPi / maxh;
  const double C_norm = 16.0 * kPi * std::log(2.0 * kPi);
  setup.level_lower_bound =
      8.0 * kPi * std::log(setup.delta) - 4.0 * setup.delta * maxh - C_norm;
  const double target = std::min(Ia - 1.0, setup.level_lower_bound - 1.0);

  const bool k_negative = K.max() < 0.0;
  // walk the radial bubble down in mu; G-symmetric for every group
  double mu = 4.0;
  const double mu_floor = 1.0 + 16.0 / g.n_r;  // layer resolved by >= 8 rings
  while (true) {
    ScalarField bubble = radial_bubble(mu, g);
    if (k_negative) bubble = tilde(bubble, K);
    bubble = symmetrize(bubble, G);
    bool of = false;
    const double Ib = energy_I(bubble, K, h).I_value;
    BoundaryField eb(g);
    const int jb = g.boundary_ring();
    for (int i = 0; i < g.n_theta; ++i) eb.at(i) = clamped_exp(0.5 * bubble.at(jb, i), &of);
    const double mass = integrate_boundary(eb);
    if (!of && Ib < target && mass > setup.delta) {
      setup.u_b = std::move(bubble);
      return setup;
    }
    const double mu_next = 1.0 + 0.8 * (mu - 1.0);
    if (mu_next < mu_floor) {
      throw Error(ErrorCode::PathCollapse,
                  "no admissible low endpoint below mu = " + std::to_string(mu) +
                      " at this resolution (is max D > 1?)");
    }
    mu = mu_next;
  }
}

MountainPassResult mountain_pass(const ScalarField& u_a, const ScalarField& u_b,
                                 const PerturbedCoeffs& c, int n_path, const SolverOptions& opts) {
  opts.validate();
  require_same_grid(u_a.grid, u_b.grid, "mountain_pass");
  require_same_grid(u_a.grid, c.K_eff.grid, "mountain_pass");
  if (n_path < 5) throw Error(ErrorCode::InvalidOptions, "mountain_pass needs n_path >= 5");
  const Grid& g = u_a.grid;
  detail::SectorOps ops = detail::build_sector_ops(g, g.n_theta);
  detail::SpMat P = ops.A;
  for (int n = 0; n < ops.size(); ++n) P.coeffRef(n, n) += ops.mass[n];
  detail2::Solver precond;
  precond.compute(P);
  if (precond.info() != Eigen::Success)
    throw Error(ErrorCode::EigSolverFailure, "mountain_pass: preconditioner failed");

  auto energy_of = [&](const ScalarField& f) {
    bool of = false;
    const double e = perturbed_energy(f, c, &of);
    return of ? std::numeric_limits<double>::infinity() : e;
  };
  auto l2dist = [&](const ScalarField& f1, const ScalarField& f2) {
    double acc = 0.0;
    for (int n = 0; n < ops.size(); ++n) {
      const double d = f1.data[static_cast<size_t>(n)] - f2.data[static_cast<size_t>(n)];
      acc += ops.mass[n] * d * d;
    }
    return std::sqrt(acc);
  };

  std::vector<ScalarField> path;
  path.reserve(static_cast<size_t>(n_path));
  for (int t = 0; t < n_path; ++t) {
    const double s = static_cast<double>(t) / (n_path - 1);
    ScalarField f(g);
    for (size_t n = 0; n < f.data.size(); ++n)
      f.data[n] = (1.0 - s) * u_a.data[n] + s * u_b.data[n];
    path.push_back(detail2::project(f, opts.group));
  }
  std::vector<double> E(static_cast<size_t>(n_path));
  for (int t = 0; t < n_path; ++t) E[static_cast<size_t>(t)] = energy_of(path[static_cast<size_t>(t)]);

  auto argmax = [&]() {
    int tm = 0;
    for (int t = 1; t < n_path; ++t)
      if (E[static_cast<size_t>(t)] > E[static_cast<size_t>(tm)]) tm = t;
    return tm;
  };
  {
    const int tm = argmax();
    if (tm == 0 || tm == n_path - 1) {
      throw Error(ErrorCode::PathCollapse,
                  "mountain-pass geometry violated: endpoints do not lie below the path");
    }
  }

  auto reeven = [&]() {
    std::vector<double> cum(static_cast<size_t>(n_path), 0.0);
    for (int t = 1; t < n_path; ++t)
      cum[static_cast<size_t>(t)] = cum[static_cast<size_t>(t) - 1] +
                                    l2dist(path[static_cast<size_t>(t)], path[static_cast<size_t>(t) - 1]);
    const double total = cum.back();
    if (!(total > 0.0)) return;
    std::vector<ScalarField> fresh;
    fresh.reserve(static_cast<size_t>(n_path));
    fresh.push_back(path.front());
    int seg = 0;
    for (int t = 1; t + 1 < n_path; ++t) {
      const double target = total * t / (n_path - 1);
      while (seg + 1 < n_path - 1 && cum[static_cast<size_t>(seg) + 1] < target) ++seg;
      const double lo = cum[static_cast<size_t>(seg)], hi = cum[static_cast<size_t>(seg) + 1];
      const double w2 = hi > lo ? (target - lo) / (hi - lo) : 0.0;
      ScalarField f(g);
      for (size_t n = 0; n < f.data.size(); ++n)
        f.data[n] = (1.0 - w2) * path[static_cast<size_t>(seg)].data[n] +
                    w2 * path[static_cast<size_t>(seg) + 1].data[n];
      fresh.push_back(std::move(f));
    }
    fresh.push_back(path.back());
    path = std::move(fresh);
    for (int t = 0; t < n_path; ++t)
      E[static_cast<size_t>(t)] = energy_of(path[static_cast<size_t>(t)]);
  };

  MountainPassResult out;
  double grad_tol = opts.mp_grad_tol;
  int outer = 0;
  for (; outer < opts.mp_max_outer; ++outer) {
    const int tm = argmax();
    if (tm == 0 || tm == n_path - 1)
      throw Error(ErrorCode::PathCollapse, "path maximum migrated to an endpoint");

    ScalarField& node = path[static_cast<size_t>(tm)];
    const Residual res = residual(node, c);
    const Eigen::VectorXd grad = detail2::gradient_vector(ops, res);
    const Eigen::VectorXd w = precond.solve(grad);
    const double g2 = grad.dot(w);
    const double pgnorm = std::sqrt(std::max(0.0, g2));

    if (pgnorm <= grad_tol) {
      SolutionRecord polished = newton_solve(node, c, opts);
      if (polished.converged) {
        out.level = E[static_cast<size_t>(argmax())];
        out.path_energies = E;
        out.outer_iterations = outer;
        out.critical_point = std::move(polished);
        return out;
      }
      grad_tol *= 0.25;  // not yet in the Newton basin
    }

    double t = 1.0;
    bool accepted = false;
    while (t > 1e-14) {
      ScalarField node_try = node;
      for (int n = 0; n < ops.size(); ++n) node_try.data[static_cast<size_t>(n)] -= t * w[n];
      node_try = detail2::project(node_try, opts.group);
      const double e_try = energy_of(node_try);
      if (std::isfinite(e_try) && e_try <= E[static_cast<size_t>(tm)] - 1e-4 * t * g2) {
        node = std::move(node_try);
        E[static_cast<size_t>(tm)] = e_try;
        accepted = true;
        break;
      }
      t *= opts.damping;
    }
    if (!accepted) {
      // the max node resists descent; polish from it regardless
      SolutionRecord polished = newton_solve(node, c, opts);
      out.level = E[static_cast<size_t>(argmax())];
      out.path_energies = E;
      out.outer_iterations = outer;
      out.critical_point = std::move(polished);
      return out;
    }
    reeven();
  }

  const int tm = argmax();
  SolutionRecord polished = newton_solve(path[static_cast<size_t>(tm)], c, opts);
  out.level = E[static_cast<size_t>(tm)];
  out.path_energies = E;
  out.outer_iterations = outer;
  out.critical_point = std::move(polished);
  return out;
}

}  // namespace diskcurv
