// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#include "measures/measures.hpp"

#include <cmath>

#include "common/error.hpp"

namespace tempsteer::measures {

double negativity(const Matrix& rho, const SpaceLabel& label, const std::string& party) {
  const Matrix pt = qmat::partial_transpose(rho, label, party);
  const Eigen::VectorXd evals = qmat::hermitian_eigenvalues(pt);
  double neg = 0.0;
  for (Eigen::Index i = 0; i < evals.size(); ++i)
    if (evals(i) < 0.0) neg -= evals(i);
  return neg;
}

Matrix simplified_rp_state(const SimplifiedRpParams& p, double t) {
  if (p.a < 0.0 || p.a > 1.0) throw ValidationError("nuclear weight a must lie in [0, 1]");
  using qmat::Complex;

  const Matrix singlet = qmat::projector(dynamics::two_electron_st_basis().col(0));
  const Complex i_unit(0.0, 1.0);
  const Matrix phase_up =
      qmat::kron(qmat::expm(i_unit * p.a_z * t * qmat::pauli_z()), qmat::identity(2));
  const Matrix phase_down = phase_up.adjoint();

  Matrix up(2, 2), down(2, 2);
  up << 1, 0, 0, 0;
  down << 0, 0, 0, 1;
  return p.a * qmat::kron(phase_up * singlet * phase_up.adjoint(), up) +
         (1.0 - p.a) * qmat::kron(phase_down * singlet * phase_down.adjoint(), down);
}

double nonmonotonicity(const TimeSeries& series) {
  if (series.times.size() != series.values.size())
    throw ValidationError("time series length mismatch");
  if (series.values.size() < 2)
    throw ValidationError("nonmonotonicity needs at least two samples");
  for (size_t i = 1; i < series.times.size(); ++i)
    if (series.times[i] <= series.times[i - 1])
      throw ValidationError("time series must be strictly ascending");

  double rises = 0.0;
  for (size_t i = 1; i < series.values.size(); ++i)
    rises += std::max(0.0, series.values[i] - series.values[i - 1]);
  return rises;
}

}  // namespace tempsteer::measures
