// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#include "steering/mub.hpp"

#include <cmath>

#include "common/error.hpp"

namespace tempsteer::steering {

namespace {

constexpr Complex kOne(1.0, 0.0);
constexpr Complex kI(0.0, 1.0);

MeasurementSet from_vectors(const std::vector<std::vector<Vector>>& bases) {
  MeasurementSet set;
  set.n_settings = static_cast<int>(bases.size());
  set.n_outcomes = static_cast<int>(bases[0].size());
  for (const auto& basis : bases)
    for (const auto& v : basis) set.projectors.push_back(qmat::projector(v));
  return set;
}

std::vector<std::vector<Vector>> mub_d4_vectors(bool verbatim_basis3) {
  auto ket = [](Complex c1, Complex c2, Complex c3, Complex c4) {
    Vector v(4);
    v << c1, c2, c3, c4;
    return Vector(0.5 * v);
  };

  std::vector<std::vector<Vector>> bases;
  bases.push_back({qmat::basis_ket(4, 0), qmat::basis_ket(4, 1), qmat::basis_ket(4, 2),
                   qmat::basis_ket(4, 3)});
  bases.push_back({ket(1, 1, 1, 1), ket(1, 1, -1, -1), ket(1, -1, -1, 1), ket(1, -1, 1, -1)});
  // The published fourth vector of basis 3 reads (1, 1, -i, 1)/2, which is not
  // orthogonal to the third; the consistent entry is (1, 1, -i, i)/2.
  bases.push_back({ket(1, -1, -kI, -kI), ket(1, -1, kI, kI), ket(1, 1, kI, -kI),
                   verbatim_basis3 ? ket(1, 1, -kI, kOne) : ket(1, 1, -kI, kI)});
  bases.push_back({ket(1, -kI, -kI, -1), ket(1, -kI, kI, 1), ket(1, kI, kI, -1),
                   ket(1, kI, -kI, 1)});
  bases.push_back({ket(1, -kI, -1, -kI), ket(1, -kI, 1, kI), ket(1, kI, -1, kI),
                   ket(1, kI, 1, -kI)});
  return bases;
}

}  // namespace

MeasurementSet build_mubs_d4() {
  MeasurementSet set = from_vectors(mub_d4_vectors(false));
  const MubReport report = verify_mub(set, 4);
  if (!report.pass) throw NumericalError("d=4 MUB table failed its self-check");
  return set;
}

MeasurementSet build_mubs_d4_verbatim() { return from_vectors(mub_d4_vectors(true)); }

MeasurementSet select_settings(const MeasurementSet& set, const std::vector<int>& basis_indices) {
  MeasurementSet out;
  out.n_settings = static_cast<int>(basis_indices.size());
  out.n_outcomes = set.n_outcomes;
  for (int idx : basis_indices) {
    if (idx < 1 || idx > set.n_settings)
      throw ValidationError("basis index " + std::to_string(idx) + " out of range 1.." +
                            std::to_string(set.n_settings));
    for (int a = 0; a < set.n_outcomes; ++a) out.projectors.push_back(set.op(idx - 1, a));
  }
  return out;
}

MeasurementSet conjugate_measurements(const MeasurementSet& set, const Matrix& u) {
  MeasurementSet out = set;
  for (auto& m : out.projectors) m = u * m * u.adjoint();
  return out;
}

MeasurementSet qubit_pauli_measurements(bool include_y) {
  const double s = 1.0 / std::sqrt(2.0);
  Vector xp(2), xm(2), yp(2), ym(2);
  xp << s, s;
  xm << s, -s;
  yp << s, kI * s;
  ym << s, -kI * s;
  std::vector<std::vector<Vector>> bases;
  bases.push_back({xp, xm});
  bases.push_back({qmat::basis_ket(2, 0), qmat::basis_ket(2, 1)});
  if (include_y) bases.push_back({yp, ym});
  return from_vectors(bases);
}

MubReport verify_mub(const MeasurementSet& set, int dim) {
  MubReport r;
  const double inv_d = 1.0 / static_cast<double>(dim);
  const Matrix id = qmat::identity(dim);

  for (int x = 0; x < set.n_settings; ++x) {
    Matrix sum = Matrix::Zero(dim, dim);
    for (int a = 0; a < set.n_outcomes; ++a) {
      const Matrix& m = set.op(x, a);
      sum += m;
      r.max_projectivity_dev = std::max(r.max_projectivity_dev,
                                        (m * m - m).cwiseAbs().maxCoeff());
      for (int b = 0; b < set.n_outcomes; ++b) {
        const double overlap = (set.op(x, a) * set.op(x, b)).trace().real();
        const double target = (a == b) ? 1.0 : 0.0;
        r.max_orthonormality_dev = std::max(r.max_orthonormality_dev, std::abs(overlap - target));
      }
    }
    r.max_completeness_dev = std::max(r.max_completeness_dev, (sum - id).cwiseAbs().maxCoeff());
  }

  for (int x = 0; x < set.n_settings; ++x)
    for (int y = x + 1; y < set.n_settings; ++y)
      for (int a = 0; a < set.n_outcomes; ++a)
        for (int b = 0; b < set.n_outcomes; ++b) {
          const double overlap = (set.op(x, a) * set.op(y, b)).trace().real();
          r.max_unbiasedness_dev = std::max(r.max_unbiasedness_dev, std::abs(overlap - inv_d));
        }

  r.pass = r.max_orthonormality_dev < 1e-10 && r.max_completeness_dev < 1e-10 &&
           r.max_unbiasedness_dev < 1e-10 && r.max_projectivity_dev < 1e-10;
  return r;
}

}  // namespace tempsteer::steering
