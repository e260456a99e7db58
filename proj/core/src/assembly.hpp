#pragma once

// Internal: sparse assembly of the Dirichlet form and related diagonals on a
// fundamental angular sector. sector == n_theta gives the full grid; 1 is the
// radial (O(2)-symmetric) subspace; n_theta/k the Cyclic(k) subspace. All
// weights are those of the full grid, so restricted forms differ from the
// true G-symmetric restrictions by the constant factor 1/k, which cancels in
// every pencil.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "diskcurv/energy.hpp"
#include "diskcurv/field.hpp"
#include "diskcurv/operators.hpp"

namespace diskcurv::detail {

using SpMat = Eigen::SparseMatrix<double>;

struct SectorOps {
  int m = 0;        // rings
  int s = 0;        // sector width in angular nodes
  double dr = 0.0;
  double dth = 0.0;  // full-grid angular spacing
  std::vector<double> w;  // radial quadrature weights
  SpMat A;                // Dirichlet form matrix
  Eigen::VectorXd mass;   // disk L^2 weights w_j*dth per node

  int idx(int j, int i) const { return j * s + i; }
  int size() const { return m * s; }
};

inline SectorOps build_sector_ops(const Grid& g, int sector) {
  SectorOps ops;
  ops.m = g.n_r;
  ops.s = sector;
  ops.dr = g.dr();
  ops.dth = g.dtheta();
  ops.w = radial_weights(g);

  const int m = ops.m, s = ops.s;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(m) * s * 8 + static_cast<size_t>(s) * s);
  for (int t = 0; t < m * s; ++t) trip.emplace_back(t, t, 0.0);  // keep diagonals in pattern

  // radial faces
  for (int j = 0; j + 1 < m; ++j) {
    const double c = (g.radius(j) + ops.dr / 2.0) * ops.dth / ops.dr;
    for (int i = 0; i < s; ++i) {
      const int a = ops.idx(j, i), b = ops.idx(j + 1, i);
      trip.emplace_back(a, a, c);
      trip.emplace_back(b, b, c);
      trip.emplace_back(a, b, -c);
      trip.emplace_back(b, a, -c);
    }
  }
  // pole faces: c * (I - (1/s) 1 1^T) on the first ring
  if (s > 1) {
    const double c = (g.radius(0) - ops.dr / 2.0) * ops.dth / ops.dr;
    for (int i = 0; i < s; ++i) {
      trip.emplace_back(ops.idx(0, i), ops.idx(0, i), c);
      for (int i2 = 0; i2 < s; ++i2) trip.emplace_back(ops.idx(0, i), ops.idx(0, i2), -c / s);
    }
  }
  // angular faces with periodic wrap inside the sector
  if (s > 1) {
    for (int j = 0; j < m; ++j) {
      const double r = g.radius(j);
      const double c = ops.w[static_cast<size_t>(j)] / (r * r * ops.dth);
      for (int i = 0; i < s; ++i) {
        const int a = ops.idx(j, i), b = ops.idx(j, (i + 1) % s);
        trip.emplace_back(a, a, c);
        trip.emplace_back(b, b, c);
        trip.emplace_back(a, b, -c);
        trip.emplace_back(b, a, -c);
      }
    }
  }

  ops.A.resize(m * s, m * s);
  ops.A.setFromTriplets(trip.begin(), trip.end());

  ops.mass.resize(m * s);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < s; ++i) ops.mass[ops.idx(j, i)] = ops.w[static_cast<size_t>(j)] * ops.dth;
  return ops;
}

/// Hessian of the normalized perturbed energy (or of Q without its
/// (1+2 eps) scale): A plus the reaction diagonals at the given state.
inline SpMat hessian_matrix(const SectorOps& ops, const ScalarField& u, const PerturbedCoeffs& c) {
  SpMat H = ops.A;
  bool of = false;
  const int jb = ops.m - 1;
  for (int j = 0; j < ops.m; ++j) {
    for (int i = 0; i < ops.s; ++i) {
      double d = -2.0 * c.K_eff.at(j, i) * clamped_exp(u.at(j, i), &of) *
                 ops.w[static_cast<size_t>(j)] * ops.dth;
      if (j == jb) d += -c.h_eff.at(i) * clamped_exp(0.5 * u.at(j, i), &of) * ops.dth;
      H.coeffRef(ops.idx(j, i), ops.idx(j, i)) += d;
    }
  }
  return H;
}

}  // namespace diskcurv::detail
