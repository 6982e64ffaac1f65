// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "steering/assemblage.hpp"

namespace tempsteer::tsr {

using qmat::Complex;
using qmat::Matrix;
using steering::Assemblage;
using steering::DeterministicStrategySet;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// The steering-robustness program over one deterministic-strategy family:
///   minimize   tr sum_lambda sigma_lambda - 1
///   subject to sum_lambda D_lambda(a|x) sigma_lambda >= sigma_{a|x}   for all a, x
///              sigma_lambda >= 0                                      for all lambda.
/// Hermitian blocks are realified to symmetric blocks of twice the size for
/// the cone arithmetic; the public surface stays in Hermitian terms.
struct SdpProblem {
  int d = 0;  // Hermitian block dimension
  int n_settings = 0;
  int n_outcomes = 0;
  DeterministicStrategySet strategies{1, 1};
  std::vector<Matrix> sigma;      // clipped assemblage data, index j = x * n_outcomes + a
  std::vector<RealMatrix> data;   // realified J(sigma_j)

  int n_strategies() const { return strategies.count(); }
  int n_constraints() const { return n_settings * n_outcomes; }
  int block_dim() const { return 2 * d; }  // realified
};

SdpProblem assemble_problem(const Assemblage& a, const DeterministicStrategySet& strategies);

enum class SolveStatus { Optimal, IterationLimit, InfeasibleNumerics };

const char* to_string(SolveStatus s);

struct SdpSolution {
  double primal_value = 0.0;  // tr sum sigma_lambda - 1
  double dual_value = 0.0;
  double gap = 0.0;           // |primal - dual|
  SolveStatus status = SolveStatus::InfeasibleNumerics;
  int iterations = 0;
  double wall_seconds = 0.0;

  double primal_infeasibility = 0.0;  // scaled equality residual
  double dual_infeasibility = 0.0;
  double complementarity = 0.0;           // <x, z> in Hermitian units
  double min_primal_block_eigenvalue = 0.0;
  double min_constraint_eigenvalue = 0.0;  // over sum_l D sigma_l - sigma_{a|x}

  std::vector<Matrix> primal_blocks;      // sigma_lambda
  std::vector<Matrix> dual_multipliers;   // F_{a|x}, index j = x * n_outcomes + a
};

struct SolverOptions {
  int max_iterations = 200;
  double tol_gap = 1e-8;   // relative duality gap
  double tol_feas = 1e-9;  // primal/dual infeasibility
};

/// Primal-dual interior-point solve with Nesterov-Todd scaling. The Schur
/// complement is assembled per constraint block, exploiting the one-hot
/// structure of D_lambda(a|x).
SdpSolution solve(const SdpProblem& p, const SolverOptions& opts = {});

// --- realification helpers (shared with tests) ----------------------------

/// Hermitian H -> [[Re H, -Im H], [Im H, Re H]] (symmetric, doubled spectrum).
RealMatrix realify(const Matrix& h);
/// Left inverse of realify; averages out any unstructured part.
Matrix derealify(const RealMatrix& y);

}  // namespace tempsteer::tsr
