#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "diskcurv/field.hpp"

namespace diskcurv {

/// Symmetry group of the data: the cyclic group generated by the rotation of
/// angle 2*pi/k (k >= 2), the full rotation group O(2), or no symmetry at all
/// (Trivial, so the solver can run without symmetry assumptions).
struct SymmetryGroup {
  enum class Kind { Cyclic, FullRotation, Trivial };
  Kind kind = Kind::Trivial;
  int k = 0;  // only for Cyclic

  static SymmetryGroup cyclic(int k) {
    if (k < 2) throw Error(ErrorCode::InvalidOptions, "Cyclic(k) requires k >= 2");
    return SymmetryGroup{Kind::Cyclic, k};
  }
  static SymmetryGroup full_rotation() { return SymmetryGroup{Kind::FullRotation, 0}; }
  static SymmetryGroup trivial() { return SymmetryGroup{Kind::Trivial, 0}; }
};

/// Interior curvature K: a constant, a polynomial in r^2, or values tabulated
/// on the exact solver grid (no interpolation).
struct InteriorCurvature {
  enum class Kind { Constant, RadialPolynomial, Tabulated };
  Kind kind = Kind::Constant;
  double value = -1.0;                 // Constant
  std::vector<double> coeffs;          // RadialPolynomial: K(r) = sum c_m (r^2)^m
  std::optional<ScalarField> table;    // Tabulated

  static InteriorCurvature constant(double c) { return {Kind::Constant, c, {}, std::nullopt}; }
  static InteriorCurvature radial_polynomial(std::vector<double> c) {
    return {Kind::RadialPolynomial, 0.0, std::move(c), std::nullopt};
  }
  static InteriorCurvature tabulated(ScalarField f) {
    return {Kind::Tabulated, 0.0, {}, std::move(f)};
  }
};

/// Boundary curvature h: a constant, a cosine/sine Fourier series with a
/// constant term, or values tabulated on the boundary grid.
struct BoundaryCurvature {
  enum class Kind { Constant, FourierCosSin, Tabulated };
  Kind kind = Kind::Constant;
  double value = 1.0;                          // Constant
  double fourier_constant = 0.0;               // FourierCosSin constant term
  std::map<int, std::pair<double, double>> modes;  // m -> (cos coeff, sin coeff)
  std::optional<BoundaryField> table;

  static BoundaryCurvature constant(double c) { return {Kind::Constant, c, 0.0, {}, std::nullopt}; }
  static BoundaryCurvature fourier(double constant,
                                   std::map<int, std::pair<double, double>> modes) {
    return {Kind::FourierCosSin, 0.0, constant, std::move(modes), std::nullopt};
  }
  static BoundaryCurvature tabulated(BoundaryField f) {
    return {Kind::Tabulated, 0.0, 0.0, {}, std::move(f)};
  }
};

struct CurvatureSpec {
  InteriorCurvature K_def;
  BoundaryCurvature h_def;
  SymmetryGroup group;
};

/// Deficit function D = h / sqrt(|K|) on the boundary, with its tangential
/// derivative computed by spectral differentiation in theta.
struct DeficitProfile {
  BoundaryField values;
  BoundaryField tangential_derivative;
};

struct HypothesisReport {
  bool h1 = false;              // K <= 0 in the disk and K < 0 on the boundary
  bool k_nonpositive = false;   // K <= 0 everywhere (reported separately,
  bool k_negative_annulus = false;  // K < 0 on the outer annulus)
  bool h2 = false;              // max D > 1
  bool h3 = false;              // D_tau != 0 wherever D = 1 (within tol)
  bool g_applicable = false;    // false for the Trivial group
  bool g_sym = false;           // K and h are G-symmetric to tolerance
  double max_deficit = 0.0;
  double max_K_interior = 0.0;
  double max_K_boundary = 0.0;
  std::vector<double> h3_candidate_angles;  // |D-1| <= tol and |D_tau| <= tol
  std::vector<double> deficit_one_angles;   // |D-1| <= tol
};

/// Pointwise evaluation of the curvature data on a grid.
/// Tabulated data must match the grid exactly (ShapeMismatch otherwise);
/// group invariants of the spec are validated (SymmetryViolation).
std::pair<ScalarField, BoundaryField> eval_curvatures(const CurvatureSpec& spec, const Grid& grid);

/// D = h/sqrt(|K|) on the boundary ring. Requires K < 0 at every boundary
/// node (DegenerateCurvature otherwise).
DeficitProfile deficit(const ScalarField& K, const BoundaryField& h);

/// Hypothesis report for (H1), (H2), (H3) and (G). tol <= 0 selects the
/// default band 1e-6 * (1 + max |D|).
HypothesisReport check_hypotheses(const CurvatureSpec& spec, const Grid& grid, double tol);

/// (K, h) -> (lambda^2 K, lambda h); the deficit is invariant.
std::pair<ScalarField, BoundaryField> rescale_curvatures(const ScalarField& K,
                                                         const BoundaryField& h, double lambda);

/// Group-average projection onto G-symmetric fields. Idempotent and linear.
ScalarField symmetrize(const ScalarField& f, const SymmetryGroup& G);
BoundaryField symmetrize(const BoundaryField& f, const SymmetryGroup& G);

/// Spectral derivative d/dtheta of a periodic boundary field.
BoundaryField spectral_theta_derivative(const BoundaryField& f);

}  // namespace diskcurv
