#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diskcurv/curvature.hpp"
#include "diskcurv/energy.hpp"

namespace diskcurv {

struct SolverOptions {
  int max_iters = 50;
  double tol_residual = 1e-9;  // sup-norm of the combined residual
  double damping = 0.5;        // backtracking factor in (0,1)
  std::vector<double> eps_schedule = {0.5, 0.25, 0.1, 0.04, 0.01, 0.0};
  double flow_step = 1.0;      // initial pseudo-time step of gradient_flow
  int n_path = 33;             // mountain-pass path nodes
  double mp_grad_tol = 1e-2;   // preconditioned gradient norm triggering the polish
  int mp_max_outer = 400;
  SymmetryGroup group = SymmetryGroup::trivial();  // iterates are re-projected

  void validate() const;
};

struct IterationRow {
  int iter = 0;
  double residual_interior = 0.0;
  double residual_boundary = 0.0;
  double energy = 0.0;  // normalized perturbed energy at the iterate
  double max_u = 0.0;
  double step = 0.0;
};

struct SolutionRecord {
  ScalarField u;
  double eps = 0.0;
  double residual_interior = 0.0;
  double residual_boundary = 0.0;
  EnergyReport energy;  // I at the original (K, h) recovered from the coefficients
  double gauss_bonnet_residual = 0.0;
  double chi_eps = 0.0;
  std::optional<int> morse_index_G;
  int iterations = 0;
  bool converged = false;
  double max_u = 0.0;
  std::string failure;  // "", "max_iters", "line_search", "singular_jacobian", "overflow"
  std::vector<IterationRow> log;
};

/// Inverts the perturbed-coefficient normalization back to (K, h).
std::pair<ScalarField, BoundaryField> original_curvatures(const PerturbedCoeffs& c);

/// Damped Newton on the discrete residual, sparse symmetric factorization
/// per step, backtracking on the combined residual norm.
SolutionRecord newton_solve(const ScalarField& u0, const PerturbedCoeffs& c,
                            const SolverOptions& opts);

/// H^1-preconditioned descent on the perturbed energy with Armijo
/// backtracking; energy is non-increasing along accepted steps (to the
/// round-off floor of the energy). Descent certification limits practical
/// tolerances to ~1e-6 in double precision; use newton_solve to polish.
SolutionRecord gradient_flow(const ScalarField& u0, const PerturbedCoeffs& c,
                             const SolverOptions& opts);

struct ContinuationResult {
  std::vector<SolutionRecord> records;
  bool chain_broken = false;
};

/// Solves along the decreasing eps schedule with warm starts; the final
/// record is the unperturbed problem.
ContinuationResult continuation_solve(const CurvatureSpec& spec, const Grid& grid,
                                      const SolverOptions& opts);

struct MountainPassResult {
  double level = 0.0;  // an upper bound on the min-max level
  SolutionRecord critical_point;
  std::vector<double> path_energies;
  int outer_iterations = 0;
};

/// Discrete path min-max: repeatedly relax the maximum-energy interior node
/// of a piecewise-linear path from u_a to u_b, re-even the path, and polish
/// the limit node with Newton. Throws PathCollapse when the maximum sits at
/// an endpoint.
MountainPassResult mountain_pass(const ScalarField& u_a, const ScalarField& u_b,
                                 const PerturbedCoeffs& c, int n_path, const SolverOptions& opts);

struct MorseResult {
  int index = 0;
  std::vector<double> eigenvalues;  // n_eigs smallest of (Q, H^1-Gram)
  double tol_eig = 0.0;
  std::vector<double> ground_mode;  // eigenvector of the smallest eigenvalue,
                                    // on the fundamental sector (ring-major)
  double ground_mode_mean = 0.0;    // its mass-weighted mean
};

/// G-symmetric Morse index: the quadratic form Q and the H^1 Gram form are
/// restricted to the G-symmetric subspace (a fundamental angular sector);
/// the index counts pencil eigenvalues below -tol_eig, tol_eig = 1e-8 |Q|.
/// The count comes from the factorization inertia, the listed eigenvalues
/// from shift-invert subspace iteration.
MorseResult morse_index_G(const ScalarField& u, const PerturbedCoeffs& c, const SymmetryGroup& G,
                          int n_eigs);

struct MountainPassSetup {
  ScalarField u_a;  // low constant
  ScalarField u_b;  // concentrated bubble below I(u_a) - 1
  double delta = 0.0;             // separating boundary mass
  double level_lower_bound = 0.0; // 8 pi log delta - 4 delta max h - C_norm
};

/// Endpoint recipe: u_a = -8, u_b a G-symmetrized bubble walked down in mu
/// until I(u_b) < I(u_a) - 1 and oint e^{u_b/2} > delta, delta = 2 pi/max h
/// (the maximizer of the Lebedev-Milin barrier). Needs max D > 1; throws
/// PathCollapse when no admissible endpoint exists at this resolution.
MountainPassSetup mountain_pass_endpoints(const ScalarField& K, const BoundaryField& h,
                                          const SymmetryGroup& G);

}  // namespace diskcurv
