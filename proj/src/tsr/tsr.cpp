// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#include "tsr/tsr.hpp"

#include <cmath>

#include "common/error.hpp"

namespace tempsteer::tsr {

SdpSolution tsr_solve(const Assemblage& a, const SolverOptions& opts) {
  const auto strategies = steering::enumerate_strategies(a.n_settings, a.n_outcomes);
  const SdpProblem problem = assemble_problem(a, strategies);
  return solve(problem, opts);
}

double tsr(const Assemblage& a, const SolverOptions& opts) {
  const SdpSolution sol = tsr_solve(a, opts);
  if (sol.status != SolveStatus::Optimal)
    throw NumericalError(std::string("TSR solve did not reach optimality: ") +
                         to_string(sol.status));
  if (sol.primal_value < -1e-7)
    throw NumericalError("TSR primal value " + std::to_string(sol.primal_value) +
                         " below the certified floor");
  return sol.primal_value < 1e-9 ? 0.0 : sol.primal_value;
}

CertificateReport dual_certificate_check(const SdpSolution& sol, const SdpProblem& problem) {
  CertificateReport r;
  const int na = problem.n_outcomes;

  double value = 0.0;
  double violation = 0.0;
  for (int j = 0; j < problem.n_constraints(); ++j) {
    const Matrix& f = sol.dual_multipliers[j];
    value += (problem.sigma[j].adjoint() * f).trace().real();
    violation = std::max(violation, -qmat::min_eigenvalue(f));
  }
  r.dual_value = value - 1.0;

  const Matrix id = qmat::identity(problem.d);
  for (int l = 0; l < problem.n_strategies(); ++l) {
    Matrix acc = Matrix::Zero(problem.d, problem.d);
    for (int x = 0; x < problem.n_settings; ++x)
      acc += sol.dual_multipliers[x * na + problem.strategies.outcome(l, x)];
    const double lam_max = qmat::hermitian_eigenvalues(Matrix(acc - id)).maxCoeff();
    violation = std::max(violation, lam_max);
  }
  r.dual_feasibility = std::max(violation, 0.0);

  r.vacuous = r.dual_value < 0.0;
  r.pass = r.dual_feasibility < 1e-7 && r.dual_value <= sol.primal_value + 1e-7;
  return r;
}

}  // namespace tempsteer::tsr
