// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#include "dynamics/liouvillian.hpp"

#include <Eigen/SVD>

#include "common/error.hpp"

namespace tempsteer::dynamics {

Liouvillian::Liouvillian(SpaceLabel space, Matrix hamiltonian, std::vector<Collapse> collapse)
    : space_(std::move(space)), hamiltonian_(std::move(hamiltonian)), collapse_(std::move(collapse)) {
  if (hamiltonian_.rows() != hamiltonian_.cols())
    throw ValidationError("Hamiltonian must be square");
  if (space_.dim() != hamiltonian_.rows())
    throw ValidationError("Hamiltonian dimension does not match space label");
  hamiltonian_ = qmat::hermitize(hamiltonian_, 1e-10 * std::max(1.0, hamiltonian_.cwiseAbs().maxCoeff()));

  for (const auto& c : collapse_) {
    if (c.rate < 0.0) throw ValidationError("collapse rate must be nonnegative");
    if (c.op.rows() != hamiltonian_.rows() || c.op.cols() != hamiltonian_.cols())
      throw ValidationError("collapse operator dimension mismatch");

    CollapseFast f;
    f.rate = c.rate;
    f.op = c.op;
    f.op_dag_op = c.op.adjoint() * c.op;

    const bool diagonal = (c.op - Matrix(c.op.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0;
    if (diagonal) {
      f.kind = CollapseFast::Kind::Diagonal;
      f.diag = c.op.diagonal();
    } else {
      Eigen::JacobiSVD<Matrix> svd(c.op, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const auto& sv = svd.singularValues();
      if (sv.size() > 1 && sv(1) <= 1e-14 * sv(0)) {
        f.kind = CollapseFast::Kind::RankOne;
        f.u = svd.matrixU().col(0) * sv(0);
        f.v = svd.matrixV().col(0);
      } else {
        f.kind = CollapseFast::Kind::Dense;
      }
    }
    fast_.push_back(std::move(f));
  }
}

Matrix Liouvillian::apply(const Matrix& rho) const {
  const Complex i_unit(0.0, 1.0);
  Matrix out = -i_unit * (hamiltonian_ * rho - rho * hamiltonian_);

  for (const auto& f : fast_) {
    if (f.rate == 0.0) continue;
    switch (f.kind) {
      case CollapseFast::Kind::RankOne: {
        // op = u v^dag: op rho op^dag = (v^dag rho v) u u^dag,
        // op^dag op = |u|^2 v v^dag.
        const Vector rv = rho * f.v;
        const Complex vrv = f.v.dot(rv);  // Eigen dot conjugates the left arg
        const double u2 = f.u.squaredNorm();
        out.noalias() += (f.rate * vrv) * (f.u * f.u.adjoint());
        out.noalias() -= (0.5 * f.rate * u2) * (rv * f.v.adjoint());
        out.noalias() -= (0.5 * f.rate * u2) * (f.v * (f.v.adjoint() * rho));
        break;
      }
      case CollapseFast::Kind::Diagonal: {
        // op = diag(d): (op rho op^dag)_ij = d_i conj(d_j) rho_ij.
        const Vector& d = f.diag;
        const Eigen::VectorXd d2 = d.cwiseAbs2();
        const int n = static_cast<int>(rho.rows());
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c)
            out(r, c) += f.rate * (d(r) * std::conj(d(c)) - 0.5 * (d2(r) + d2(c))) * rho(r, c);
        break;
      }
      case CollapseFast::Kind::Dense: {
        out.noalias() += f.rate * (f.op * rho * f.op.adjoint());
        out.noalias() -= (0.5 * f.rate) * (f.op_dag_op * rho + rho * f.op_dag_op);
        break;
      }
    }
  }
  return out;
}

SparseMatrix Liouvillian::superoperator() const {
  const int n = dim();
  const Complex i_unit(0.0, 1.0);

  // vec is column stacking: vec(A rho B) = (B^T kron A) vec(rho).
  auto add_sandwich = [n](std::vector<Eigen::Triplet<Complex>>& trip, const Matrix& a,
                          const Matrix& b, Complex scale) {
    const Matrix bt = b.transpose();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Complex w = bt(i, j) * scale;
        if (w == Complex(0.0, 0.0)) continue;
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            const Complex v = w * a(k, l);
            if (v != Complex(0.0, 0.0)) trip.emplace_back(i * n + k, j * n + l, v);
          }
      }
  };

  std::vector<Eigen::Triplet<Complex>> trip;
  const Matrix id = Matrix::Identity(n, n);
  add_sandwich(trip, hamiltonian_, id, -i_unit);
  add_sandwich(trip, id, hamiltonian_, i_unit);
  for (const auto& c : collapse_) {
    if (c.rate == 0.0) continue;
    const Matrix ldl = c.op.adjoint() * c.op;
    add_sandwich(trip, c.op, c.op.adjoint(), c.rate);
    add_sandwich(trip, ldl, id, -0.5 * c.rate);
    add_sandwich(trip, id, ldl, -0.5 * c.rate);
  }

  SparseMatrix out(n * n, n * n);
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

}  // namespace tempsteer::dynamics
