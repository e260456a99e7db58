#pragma once

#include <cmath>
#include <numbers>

#include "diskcurv/error.hpp"

namespace diskcurv {

/// Polar grid on the unit disk. Radial nodes r_j = (j+1)/n_r for
/// j = 0..n_r-1 (the pole r=0 is excluded, r=1 is the last ring);
/// angular nodes theta_i = 2*pi*i/n_theta, periodic.
struct Grid {
  int n_r = 0;
  int n_theta = 0;

  Grid() = default;
  Grid(int nr, int nt) : n_r(nr), n_theta(nt) {
    if (nr < 8 || nt < 8 || nt % 2 != 0) {
      throw Error(ErrorCode::InvalidGrid,
                  "grid requires n_r >= 8, n_theta >= 8 and n_theta even");
    }
  }

  double dr() const { return 1.0 / n_r; }
  double dtheta() const { return 2.0 * std::numbers::pi / n_theta; }
  double radius(int j) const { return (j + 1) * dr(); }
  double theta(int i) const { return i * dtheta(); }
  int boundary_ring() const { return n_r - 1; }
  int size() const { return n_r * n_theta; }

  bool operator==(const Grid& o) const { return n_r == o.n_r && n_theta == o.n_theta; }
  bool operator!=(const Grid& o) const { return !(*this == o); }
};

}  // namespace diskcurv
