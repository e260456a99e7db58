#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "diskcurv/field.hpp"

namespace testutil {

constexpr double kPi = std::numbers::pi;

// Modified Bessel I0 by its series sum_k (x^2/4)^k / (k!)^2; the oracle for
// the oint e^{t cos theta} integrals.
inline double bessel_I0(double x) {
  const double q = x * x / 4.0;
  double term = 1.0, acc = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= q / (k * k);
    acc += term;
    if (term < 1e-18 * acc) break;
  }
  return acc;
}

// Least-squares slope of log2(err) against refinement level; err[l] is the
// error at resolution 2^l * base.
inline double refinement_slope(const std::vector<double>& errs) {
  const int n = static_cast<int>(errs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int l = 0; l < n; ++l) {
    const double x = l, y = std::log2(errs[static_cast<size_t>(l)]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Band-limited random field: low radial polynomials times low Fourier modes,
// smooth on the closed disk.
inline diskcurv::ScalarField random_smooth_field(const diskcurv::Grid& g, std::mt19937_64& rng,
                                                 double amplitude = 1.0, int max_mode = 4) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<double> c0(3), cc(static_cast<size_t>(max_mode) + 1), cs(static_cast<size_t>(max_mode) + 1);
  for (double& v : c0) v = coef(rng);
  for (double& v : cc) v = coef(rng);
  for (double& v : cs) v = coef(rng);
  return diskcurv::ScalarField::from_function(g, [&](double r, double th) {
    double v = c0[0] + c0[1] * r * r + c0[2] * r * r * r * r;
    for (int m = 1; m <= max_mode; ++m) {
      const double rm = std::pow(r, m);
      v += rm * (cc[static_cast<size_t>(m)] * std::cos(m * th) +
                 cs[static_cast<size_t>(m)] * std::sin(m * th));
    }
    return amplitude * v;
  });
}

}  // namespace testutil
