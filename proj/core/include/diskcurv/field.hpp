#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "diskcurv/error.hpp"
#include "diskcurv/grid.hpp"

namespace diskcurv {

/// Values of a function on the polar grid, stored ring-major:
/// data[j*n_theta + i] is the value at (r_j, theta_i).
struct ScalarField {
  Grid grid;
  std::vector<double> data;

  ScalarField() = default;
  explicit ScalarField(const Grid& g, double fill = 0.0)
      : grid(g), data(static_cast<size_t>(g.size()), fill) {}

  double& at(int j, int i) { return data[static_cast<size_t>(j) * grid.n_theta + i]; }
  double at(int j, int i) const { return data[static_cast<size_t>(j) * grid.n_theta + i]; }

  static ScalarField from_function(const Grid& g,
                                   const std::function<double(double, double)>& f_r_theta) {
    ScalarField out(g);
    for (int j = 0; j < g.n_r; ++j) {
      const double r = g.radius(j);
      for (int i = 0; i < g.n_theta; ++i) out.at(j, i) = f_r_theta(r, g.theta(i));
    }
    return out;
  }

  bool all_finite() const {
    for (double v : data)
      if (!std::isfinite(v)) return false;
    return true;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : data) m = std::max(m, std::abs(v));
    return m;
  }

  double max() const {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : data) m = std::max(m, v);
    return m;
  }
};

/// Values of a function on the boundary angle grid (the r=1 ring).
struct BoundaryField {
  Grid grid;
  std::vector<double> data;

  BoundaryField() = default;
  explicit BoundaryField(const Grid& g, double fill = 0.0)
      : grid(g), data(static_cast<size_t>(g.n_theta), fill) {}

  double& at(int i) { return data[static_cast<size_t>(i)]; }
  double at(int i) const { return data[static_cast<size_t>(i)]; }

  static BoundaryField from_function(const Grid& g, const std::function<double(double)>& f_theta) {
    BoundaryField out(g);
    for (int i = 0; i < g.n_theta; ++i) out.at(i) = f_theta(g.theta(i));
    return out;
  }

  bool all_finite() const {
    for (double v : data)
      if (!std::isfinite(v)) return false;
    return true;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : data) m = std::max(m, std::abs(v));
    return m;
  }

  double max() const {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : data) m = std::max(m, v);
    return m;
  }

  double min() const {
    double m = std::numeric_limits<double>::infinity();
    for (double v : data) m = std::min(m, v);
    return m;
  }
};

inline void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (a != b) throw Error(ErrorCode::ShapeMismatch, std::string(where) + ": grid mismatch");
}

/// Boundary trace of a scalar field (values on the r=1 ring).
inline BoundaryField boundary_trace(const ScalarField& u) {
  BoundaryField out(u.grid);
  const int jb = u.grid.boundary_ring();
  for (int i = 0; i < u.grid.n_theta; ++i) out.at(i) = u.at(jb, i);
  return out;
}

}  // namespace diskcurv
