#include <algorithm>
#include <cmath>
#include <random>

#include "assembly.hpp"
#include "diskcurv/solvers.hpp"

namespace diskcurv {

namespace {

using detail::SpMat;
using Eigen::MatrixXd;
using Eigen::VectorXd;

int sector_width(const Grid& g, const SymmetryGroup& G) {
  switch (G.kind) {
    case SymmetryGroup::Kind::FullRotation:
      return 1;
    case SymmetryGroup::Kind::Cyclic:
      if (g.n_theta % G.k != 0)
        throw Error(ErrorCode::ResolutionNotDivisible, "n_theta not divisible by k");
      return g.n_theta / G.k;
    case SymmetryGroup::Kind::Trivial:
      return g.n_theta;
  }
  return g.n_theta;
}

double gershgorin_norm(const SpMat& Q) {
  std::vector<double> rowsum(static_cast<size_t>(Q.rows()), 0.0);
  for (int k = 0; k < Q.outerSize(); ++k)
    for (SpMat::InnerIterator it(Q, k); it; ++it)
      rowsum[static_cast<size_t>(it.row())] += std::abs(it.value());
  double m = 0.0;
  for (double v : rowsum) m = std::max(m, v);
  return m;
}

/// inertia (number of negative pivots) of the symmetric matrix S; nullopt on
/// factorization breakdown.
std::optional<int> ldlt_negative_count(const SpMat& S) {
  Eigen::SimplicialLDLT<SpMat, Eigen::Lower> ldlt(S);
  if (ldlt.info() != Eigen::Success) return std::nullopt;
  const VectorXd& d = ldlt.vectorD();
  int neg = 0;
  for (int i = 0; i < d.size(); ++i) {
    if (!std::isfinite(d[i])) return std::nullopt;
    if (d[i] < 0.0) ++neg;
  }
  return neg;
}

void morth(std::vector<VectorXd>& X, const SpMat& M) {
  for (size_t i = 0; i < X.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      const double c = X[j].dot(M * X[i]);
      X[i] -= c * X[j];
    }
    const double nrm = std::sqrt(std::max(1e-300, X[i].dot(M * X[i])));
    X[i] /= nrm;
  }
}

}  // namespace

MorseResult morse_index_G(const ScalarField& u, const PerturbedCoeffs& c, const SymmetryGroup& G,
                          int n_eigs) {
  require_same_grid(u.grid, c.K_eff.grid, "morse_index_G");
  if (n_eigs < 3) throw Error(ErrorCode::InvalidOptions, "morse_index_G needs n_eigs >= 3");
  if (!u.all_finite()) throw Error(ErrorCode::InvalidOptions, "morse_index_G: u not finite");

  const Grid& g = u.grid;
  const int s = sector_width(g, G);
  detail::SectorOps ops = detail::build_sector_ops(g, s);

  // the assembler reads only sector columns i < s; valid for G-symmetric data
  const double scale_q = 1.0 + 2.0 * c.eps;
  SpMat Q = detail::hessian_matrix(ops, u, c);
  Q *= scale_q;
  SpMat M = ops.A;
  for (int n = 0; n < ops.size(); ++n) M.coeffRef(n, n) += ops.mass[n];

  MorseResult out;
  out.tol_eig = 1e-8 * gershgorin_norm(Q);
  n_eigs = std::min(n_eigs, ops.size());

  // index from factorization inertia: #{lambda < -tol} = neg(Q + tol*M)
  {
    std::optional<int> neg;
    double shift = out.tol_eig;
    for (int attempt = 0; attempt < 6 && !neg; ++attempt) {
      SpMat S = Q + shift * M;
      neg = ldlt_negative_count(S);
      shift *= 1.0 + 1e-6 * (attempt + 1);
    }
    if (!neg) throw Error(ErrorCode::EigSolverFailure, "inertia factorization failed");
    out.index = *neg;
  }

  auto set_ground_mode = [&](const VectorXd& x) {
    out.ground_mode.assign(x.data(), x.data() + x.size());
    double num = 0.0, den = 0.0;
    for (int n = 0; n < ops.size(); ++n) {
      num += ops.mass[n] * x[n];
      den += ops.mass[n];
    }
    out.ground_mode_mean = num / den;
  };

  const int dim = ops.size();
  if (dim <= 2048) {
    // dense generalized symmetric eigenproblem on the reduced space
    MatrixXd Qd = MatrixXd(Q), Md = MatrixXd(M);
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> es(Qd, Md);
    if (es.info() != Eigen::Success)
      throw Error(ErrorCode::EigSolverFailure, "dense eigensolver failed");
    out.eigenvalues.assign(es.eigenvalues().data(),
                           es.eigenvalues().data() + std::min(n_eigs, dim));
    set_ground_mode(es.eigenvectors().col(0));
    return out;
  }

  // shift-invert subspace iteration for the smallest pencil eigenvalues
  double sigma = -std::max(1.0, out.tol_eig * 1e8);
  bool spd = false;
  for (int p = 0; p < 60; ++p) {
    const std::optional<int> neg = ldlt_negative_count(SpMat(Q - sigma * M));
    if (neg && *neg == 0) {
      spd = true;
      break;
    }
    sigma *= 2.0;
  }
  if (!spd) throw Error(ErrorCode::EigSolverFailure, "no SPD shift found");

  Eigen::SimplicialLDLT<SpMat, Eigen::Lower> F(SpMat(Q - sigma * M));
  if (F.info() != Eigen::Success)
    throw Error(ErrorCode::EigSolverFailure, "shifted factorization failed");

  const int block = std::min(dim, n_eigs + 6);
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<VectorXd> X(static_cast<size_t>(block), VectorXd(dim));
  for (auto& x : X)
    for (int i = 0; i < dim; ++i) x[i] = dist(rng);
  morth(X, M);

  std::vector<double> ritz(static_cast<size_t>(block), 0.0);
  for (int it = 0; it < 200; ++it) {
    for (auto& x : X) x = F.solve(M * x);
    morth(X, M);
    if (it % 5 == 4 || it == 199) {
      MatrixXd Qr(block, block), Mr(block, block);
      for (int a = 0; a < block; ++a) {
        const VectorXd Qa = Q * X[static_cast<size_t>(a)];
        const VectorXd Ma = M * X[static_cast<size_t>(a)];
        for (int b = 0; b < block; ++b) {
          Qr(b, a) = X[static_cast<size_t>(b)].dot(Qa);
          Mr(b, a) = X[static_cast<size_t>(b)].dot(Ma);
        }
      }
      Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> es(0.5 * (Qr + Qr.transpose()),
                                                            0.5 * (Mr + Mr.transpose()));
      if (es.info() != Eigen::Success)
        throw Error(ErrorCode::EigSolverFailure, "Rayleigh-Ritz failed");
      std::vector<VectorXd> Y(static_cast<size_t>(block), VectorXd(dim));
      for (int a = 0; a < block; ++a) {
        Y[static_cast<size_t>(a)].setZero();
        for (int b = 0; b < block; ++b)
          Y[static_cast<size_t>(a)] += es.eigenvectors()(b, a) * X[static_cast<size_t>(b)];
      }
      X = std::move(Y);
      bool done = true;
      for (int a = 0; a < n_eigs; ++a) {
        ritz[static_cast<size_t>(a)] = es.eigenvalues()[a];
        const VectorXd r =
            Q * X[static_cast<size_t>(a)] - es.eigenvalues()[a] * (M * X[static_cast<size_t>(a)]);
        const double scale = gershgorin_norm(Q);
        if (r.norm() > 1e-8 * scale) done = false;
      }
      if (done) break;
    }
  }
  out.eigenvalues.assign(ritz.begin(), ritz.begin() + n_eigs);
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  set_ground_mode(X[0]);
  return out;
}

}  // namespace diskcurv
