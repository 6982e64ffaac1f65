// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <vector>

#include "common/error.hpp"
#include "tsr/sdp.hpp"

namespace tempsteer::tsr {

namespace {

// Symmetric-vectorization index map for n x n blocks: the n diagonal entries
// first, then sqrt(2)-scaled upper-triangle pairs, so that
// svec(U) . svec(V) = <U, V>_F.
struct SvecMap {
  explicit SvecMap(int n) : n(n), h(n * (n + 1) / 2) {}
  int pair_index(int i, int j) const { return n + j * (j - 1) / 2 + i; }  // i < j
  int n, h;
};

RealVector svec(const SvecMap& map, const RealMatrix& u) {
  static const double kSqrt2 = std::sqrt(2.0);
  RealVector v(map.h);
  for (int i = 0; i < map.n; ++i) v(i) = u(i, i);
  for (int j = 1; j < map.n; ++j)
    for (int i = 0; i < j; ++i) v(map.pair_index(i, j)) = kSqrt2 * u(i, j);
  return v;
}

RealMatrix smat(const SvecMap& map, const RealVector& v) {
  static const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
  RealMatrix u(map.n, map.n);
  for (int i = 0; i < map.n; ++i) u(i, i) = v(i);
  for (int j = 1; j < map.n; ++j)
    for (int i = 0; i < j; ++i) u(i, j) = u(j, i) = kInvSqrt2 * v(map.pair_index(i, j));
  return u;
}

// Matrix of Y |-> W Y W in svec coordinates (the symmetric Kronecker square).
RealMatrix sym_kron(const SvecMap& map, const RealMatrix& w) {
  static const double kSqrt2 = std::sqrt(2.0);
  const int n = map.n;
  RealMatrix out(map.h, map.h);
  auto fill_column = [&](int col, const RealVector& wi, const RealVector& wj, bool diag_input) {
    // Input basis element: e_i e_i^T (diag) or (e_i e_j^T + e_j e_i^T)/sqrt(2).
    for (int l = 0; l < n; ++l)
      out(l, col) = diag_input ? wi(l) * wj(l) : kSqrt2 * wi(l) * wj(l);
    for (int m = 1; m < n; ++m)
      for (int l = 0; l < m; ++l) {
        const double v = wi(l) * wj(m) + wj(l) * wi(m);
        out(map.pair_index(l, m), col) = diag_input ? kSqrt2 * 0.5 * v : v;
      }
  };
  for (int i = 0; i < n; ++i) fill_column(i, w.col(i), w.col(i), true);
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) fill_column(map.pair_index(i, j), w.col(i), w.col(j), false);
  return out;
}

RealMatrix sqrt_psd(const Eigen::SelfAdjointEigenSolver<RealMatrix>& es, double power) {
  RealVector lam = es.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    lam(i) = std::pow(std::max(lam(i), 1e-300), power);
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

// Largest alpha in (0, 1] with X + alpha dX staying in the cone (after the
// fraction-to-boundary damping applied by the caller).
double max_step(const RealMatrix& x, const RealMatrix& dx) {
  Eigen::LLT<RealMatrix> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  const RealMatrix l = llt.matrixL();
  const RealMatrix s =
      l.triangularView<Eigen::Lower>().solve(

          l.triangularView<Eigen::Lower>().solve(dx).transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(0.5 * (s + s.transpose()),
                                               Eigen::EigenvaluesOnly);
  const double lam_min = es.eigenvalues().minCoeff();
  if (lam_min >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lam_min;
}

struct Blocks {
  std::vector<RealMatrix> m;
  Blocks() = default;
  explicit Blocks(int count) : m(count) {}
};

class InteriorPointSolver {
 public:
  InteriorPointSolver(const SdpProblem& p, const SolverOptions& opts)
      : p_(p),
        opts_(opts),
        n_(p.block_dim()),
        L_(p.n_strategies()),
        J_(p.n_constraints()),
        map_(p.block_dim()) {}

  SdpSolution run() {
    const auto t0 = std::chrono::steady_clock::now();
    initialize();

    SdpSolution best;
    best.status = SolveStatus::IterationLimit;
    int stalls = 0;

    int iter = 0;
    for (; iter < opts_.max_iterations; ++iter) {
      compute_residuals();
      record(best, iter);
      if (converged()) {
        best.status = SolveStatus::Optimal;
        break;
      }
      if (!std::isfinite(mu_) || mu_ > 1e16) {
        best.status = SolveStatus::InfeasibleNumerics;
        break;
      }

      if (!prepare_scalings() || !factor_schur()) {
        best.status = SolveStatus::InfeasibleNumerics;
        break;
      }

      // Predictor: pure Newton step toward complementarity zero.
      Blocks rc(L_ + J_);
      for (int i = 0; i < L_ + J_; ++i) rc.m[i] = -x_.m[i];
      Blocks dx(L_ + J_), dz(L_ + J_);
      std::vector<RealMatrix> dy(J_);
      solve_newton(rc, dx, dy, dz);
      const double ap_aff = std::min(1.0, step_length(x_, dx));
      const double ad_aff = std::min(1.0, step_length(z_, dz));
      const double mu_aff = inner_after_step(ap_aff, dx, ad_aff, dz) / nu();
      double sigma = std::pow(mu_aff / mu_, 3.0);
      sigma = std::clamp(sigma, 1e-10, 1.0);

      // Corrector: recentered step reusing the factorization.
      for (int i = 0; i < L_ + J_; ++i) rc.m[i] = sigma * mu_ * zinv_[i] - x_.m[i];
      solve_newton(rc, dx, dy, dz);
      const double eta = 0.99;
      const double ap = std::min(1.0, eta * step_length(x_, dx));
      const double ad = std::min(1.0, eta * step_length(z_, dz));

      if (ap < 1e-10 && ad < 1e-10) {
        if (++stalls >= 3) {
          best.status = SolveStatus::InfeasibleNumerics;
          break;
        }
      } else {
        stalls = 0;
      }

      for (int i = 0; i < L_ + J_; ++i) {
        x_.m[i] += ap * dx.m[i];
        z_.m[i] += ad * dz.m[i];
      }
      for (int j = 0; j < J_; ++j) y_[j] += ad * dy[j];
      ++iter_count_;
    }
    if (iter == opts_.max_iterations) {
      compute_residuals();
      record(best, iter);
    }

    extract(best);
    best.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return best;
  }

 private:
  int nu() const { return (L_ + J_) * n_; }

  void initialize() {
    x_ = Blocks(L_ + J_);
    z_ = Blocks(L_ + J_);
    y_.assign(J_, RealMatrix::Zero(n_, n_));

    // Interior bootstrap: inflate the common total state so every constraint
    // slack starts strictly positive definite.
    RealMatrix total = RealMatrix::Zero(n_, n_);
    for (int a = 0; a < p_.n_outcomes; ++a) total += p_.data[a];  // setting x = 0
    const double delta = 1.0;
    const double cushion = 0.25;
    const RealMatrix inflated =
        (1.0 + delta) * (total + cushion * RealMatrix::Identity(n_, n_));
    const double covering = std::pow(p_.n_outcomes, p_.n_settings - 1);

    for (int l = 0; l < L_; ++l) x_.m[l] = inflated / covering;
    for (int j = 0; j < J_; ++j) x_.m[L_ + j] = inflated - p_.data[j];
    for (int i = 0; i < L_ + J_; ++i) z_.m[i] = RealMatrix::Identity(n_, n_);
  }

  void compute_residuals() {
    rp_.assign(J_, RealMatrix());
    double rp_max = 0.0, b_max = 0.0;
    std::vector<RealMatrix> lhs(J_, RealMatrix::Zero(n_, n_));
    for (int l = 0; l < L_; ++l)
      for (int x = 0; x < p_.n_settings; ++x)
        lhs[x * p_.n_outcomes + p_.strategies.outcome(l, x)] += x_.m[l];
    for (int j = 0; j < J_; ++j) {
      rp_[j] = p_.data[j] - (lhs[j] - x_.m[L_ + j]);
      rp_max = std::max(rp_max, rp_[j].norm());
      b_max = std::max(b_max, p_.data[j].norm());
    }
    pinf_ = rp_max / (1.0 + b_max);

    rd_.assign(L_ + J_, RealMatrix());
    double rd_max = 0.0;
    const RealMatrix id = RealMatrix::Identity(n_, n_);
    for (int l = 0; l < L_; ++l) {
      RealMatrix acc = id;
      for (int x = 0; x < p_.n_settings; ++x)
        acc -= y_[x * p_.n_outcomes + p_.strategies.outcome(l, x)];
      rd_[l] = acc - z_.m[l];
      rd_max = std::max(rd_max, rd_[l].norm());
    }
    for (int j = 0; j < J_; ++j) {
      rd_[L_ + j] = y_[j] - z_.m[L_ + j];
      rd_max = std::max(rd_max, rd_[L_ + j].norm());
    }
    dinf_ = rd_max / (1.0 + std::sqrt(static_cast<double>(n_)));

    double ip = 0.0, pobj = 0.0, dobj = 0.0;
    for (int i = 0; i < L_ + J_; ++i) ip += x_.m[i].cwiseProduct(z_.m[i]).sum();
    for (int l = 0; l < L_; ++l) pobj += x_.m[l].trace();
    for (int j = 0; j < J_; ++j) dobj += p_.data[j].cwiseProduct(y_[j]).sum();
    mu_ = ip / nu();
    inner_xz_ = ip;
    primal_obj_ = 0.5 * pobj - 1.0;
    dual_obj_ = 0.5 * dobj - 1.0;
  }

  bool converged() const {
    const double relgap =
        std::abs(primal_obj_ - dual_obj_) / std::max(1.0, std::abs(primal_obj_));
    return pinf_ < opts_.tol_feas && dinf_ < opts_.tol_feas && relgap < opts_.tol_gap;
  }

  bool prepare_scalings() {
    w_.assign(L_ + J_, RealMatrix());
    wkron_.assign(L_ + J_, RealMatrix());
    zinv_.assign(L_ + J_, RealMatrix());
    for (int i = 0; i < L_ + J_; ++i) {
      Eigen::SelfAdjointEigenSolver<RealMatrix> ez(z_.m[i]);
      if (ez.eigenvalues().minCoeff() <= 0.0) return false;
      const RealMatrix z_half = sqrt_psd(ez, 0.5);
      const RealMatrix z_mhalf = sqrt_psd(ez, -0.5);
      zinv_[i] = sqrt_psd(ez, -1.0);
      Eigen::SelfAdjointEigenSolver<RealMatrix> em(z_half * x_.m[i] * z_half);
      if (em.eigenvalues().minCoeff() <= 0.0) return false;
      w_[i] = z_mhalf * sqrt_psd(em, 0.5) * z_mhalf;
      wkron_[i] = sym_kron(map_, w_[i]);
    }
    return true;
  }

  bool factor_schur() {
    const int dim = J_ * map_.h;
    RealMatrix schur = RealMatrix::Zero(dim, dim);
    for (int j = 0; j < J_; ++j)
      schur.block(j * map_.h, j * map_.h, map_.h, map_.h) = wkron_[L_ + j];
    for (int l = 0; l < L_; ++l) {
      for (int xa = 0; xa < p_.n_settings; ++xa) {
        const int j = xa * p_.n_outcomes + p_.strategies.outcome(l, xa);
        for (int xb = 0; xb < p_.n_settings; ++xb) {
          const int k = xb * p_.n_outcomes + p_.strategies.outcome(l, xb);
          schur.block(j * map_.h, k * map_.h, map_.h, map_.h) += wkron_[l];
        }
      }
    }
    schur_llt_.compute(schur);
    if (schur_llt_.info() != Eigen::Success) {
      // One retry with a tiny ridge; the Schur complement is PD in exact
      // arithmetic but late iterations can round it to semidefinite.
      schur.diagonal().array() += 1e-13 * schur.diagonal().maxCoeff();
      schur_llt_.compute(schur);
      if (schur_llt_.info() != Eigen::Success) return false;
    }
    return true;
  }

  // Solves the Newton system for the given complementarity target rc:
  //   A dx = rp,  A^T dy + dz = rd,  dx + W dz W = rc.
  void solve_newton(const Blocks& rc, Blocks& dx, std::vector<RealMatrix>& dy, Blocks& dz) {
    // rhs_j = rp_j - A(rc)_j + A(W rd W)_j
    std::vector<RealMatrix> rhs(J_);
    Blocks g(L_ + J_);
    for (int i = 0; i < L_ + J_; ++i) g.m[i] = w_[i] * rd_[i] * w_[i];
    for (int j = 0; j < J_; ++j) rhs[j] = rp_[j] + rc.m[L_ + j] - g.m[L_ + j];
    for (int l = 0; l < L_; ++l)
      for (int x = 0; x < p_.n_settings; ++x) {
        const int j = x * p_.n_outcomes + p_.strategies.outcome(l, x);
        rhs[j] += g.m[l] - rc.m[l];
      }

    RealVector stacked(J_ * map_.h);
    for (int j = 0; j < J_; ++j) stacked.segment(j * map_.h, map_.h) = svec(map_, rhs[j]);
    const RealVector solved = schur_llt_.solve(stacked);
    for (int j = 0; j < J_; ++j) dy[j] = smat(map_, solved.segment(j * map_.h, map_.h));

    // dz = rd - A^T dy;  dx = rc - W dz W.
    for (int l = 0; l < L_; ++l) {
      RealMatrix aty = RealMatrix::Zero(n_, n_);
      for (int x = 0; x < p_.n_settings; ++x)
        aty += dy[x * p_.n_outcomes + p_.strategies.outcome(l, x)];
      dz.m[l] = rd_[l] - aty;
    }
    for (int j = 0; j < J_; ++j) dz.m[L_ + j] = rd_[L_ + j] + dy[j];
    for (int i = 0; i < L_ + J_; ++i) dx.m[i] = rc.m[i] - w_[i] * dz.m[i] * w_[i];
  }

  double step_length(const Blocks& point, const Blocks& dir) const {
    double alpha = std::numeric_limits<double>::infinity();
    for (int i = 0; i < L_ + J_; ++i) alpha = std::min(alpha, max_step(point.m[i], dir.m[i]));
    return alpha;
  }

  double inner_after_step(double ap, const Blocks& dx, double ad, const Blocks& dz) const {
    double ip = 0.0;
    for (int i = 0; i < L_ + J_; ++i)
      ip += (x_.m[i] + ap * dx.m[i]).cwiseProduct(z_.m[i] + ad * dz.m[i]).sum();
    return ip;
  }

  void record(SdpSolution& sol, int iter) const {
    sol.primal_value = primal_obj_;
    sol.dual_value = dual_obj_;
    sol.gap = std::abs(primal_obj_ - dual_obj_);
    sol.iterations = iter;
    sol.primal_infeasibility = pinf_;
    sol.dual_infeasibility = dinf_;
    sol.complementarity = 0.5 * inner_xz_;
  }

  void extract(SdpSolution& sol) const {
    sol.primal_blocks.clear();
    sol.dual_multipliers.clear();
    double pobj = 0.0;
    for (int l = 0; l < L_; ++l) {
      sol.primal_blocks.push_back(derealify(x_.m[l]));
      pobj += sol.primal_blocks.back().trace().real();
    }
    for (int j = 0; j < J_; ++j) sol.dual_multipliers.push_back(derealify(y_[j]));
    sol.primal_value = pobj - 1.0;

    double dobj = 0.0;
    for (int j = 0; j < J_; ++j)
      dobj += (p_.sigma[j].adjoint() * sol.dual_multipliers[j]).trace().real();
    sol.dual_value = dobj - 1.0;
    sol.gap = std::abs(sol.primal_value - sol.dual_value);

    double min_block = std::numeric_limits<double>::infinity();
    for (const auto& b : sol.primal_blocks)
      min_block = std::min(min_block, qmat::min_eigenvalue(b));
    sol.min_primal_block_eigenvalue = min_block;

    double min_cons = std::numeric_limits<double>::infinity();
    std::vector<Matrix> lhs(J_, Matrix::Zero(p_.d, p_.d));
    for (int l = 0; l < L_; ++l)
      for (int x = 0; x < p_.n_settings; ++x)
        lhs[x * p_.n_outcomes + p_.strategies.outcome(l, x)] += sol.primal_blocks[l];
    for (int j = 0; j < J_; ++j)
      min_cons = std::min(min_cons, qmat::min_eigenvalue(Matrix(lhs[j] - p_.sigma[j])));
    sol.min_constraint_eigenvalue = min_cons;
  }

  const SdpProblem& p_;
  SolverOptions opts_;
  int n_, L_, J_;
  SvecMap map_;

  Blocks x_, z_;
  std::vector<RealMatrix> y_;
  std::vector<RealMatrix> rp_, rd_;
  std::vector<RealMatrix> w_, wkron_, zinv_;
  Eigen::LLT<RealMatrix> schur_llt_;
  double mu_ = 0.0, pinf_ = 0.0, dinf_ = 0.0;
  double inner_xz_ = 0.0, primal_obj_ = 0.0, dual_obj_ = 0.0;
  int iter_count_ = 0;
};

}  // namespace

SdpSolution solve(const SdpProblem& p, const SolverOptions& opts) {
  if (p.d < 1 || p.n_settings < 1 || p.n_outcomes < 1)
    throw ValidationError("malformed SDP problem");
  if (p.data.size() != static_cast<size_t>(p.n_constraints()))
    throw ValidationError("SDP data block count mismatch");
  InteriorPointSolver solver(p, opts);
  return solver.run();
}

}  // namespace tempsteer::tsr
