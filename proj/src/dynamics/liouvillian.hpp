// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Sparse>
#include <vector>

#include "qmat/qmat.hpp"
#include "qmat/space.hpp"

namespace tempsteer::dynamics {

using qmat::Complex;
using qmat::Matrix;
using qmat::SpaceLabel;
using qmat::Vector;

using SparseMatrix = Eigen::SparseMatrix<Complex>;

/// Generator of a Lindblad master equation,
///   d rho/dt = -i [H, rho] + sum_k rate_k (L rho L^dag - {L^dag L, rho}/2),
/// with H in angular-frequency units (hbar = 1) and rates in 1/time.
class Liouvillian {
 public:
  struct Collapse {
    Matrix op;
    double rate;  // >= 0
  };

  Liouvillian(SpaceLabel space, Matrix hamiltonian, std::vector<Collapse> collapse);

  const SpaceLabel& space() const { return space_; }
  int dim() const { return static_cast<int>(hamiltonian_.rows()); }
  const Matrix& hamiltonian() const { return hamiltonian_; }
  const std::vector<Collapse>& collapse() const { return collapse_; }

  /// Right-hand side of the master equation.
  Matrix apply(const Matrix& rho) const;

  /// Column-stacked superoperator: vec(L(rho)) = superoperator() * vec(rho).
  SparseMatrix superoperator() const;

 private:
  // Structure detected at construction so apply() avoids dense products for
  // the common jump-operator shapes.
  struct CollapseFast {
    enum class Kind { Dense, RankOne, Diagonal } kind;
    Matrix op;        // dense fallback
    Matrix op_dag_op;
    Vector u, v;      // op = u v^dag when rank one
    Vector diag;      // op = diag(diag) when diagonal
    double rate;
  };

  SpaceLabel space_;
  Matrix hamiltonian_;
  std::vector<Collapse> collapse_;
  std::vector<CollapseFast> fast_;
};

}  // namespace tempsteer::dynamics
