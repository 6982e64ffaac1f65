// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "qmat/qmat.hpp"

namespace tempsteer::steering {

using qmat::Complex;
using qmat::Matrix;
using qmat::Vector;

/// A family of projective measurements M_{a|x}, x = setting, a = outcome.
struct MeasurementSet {
  int n_settings = 0;
  int n_outcomes = 0;
  std::vector<Matrix> projectors;  // index x * n_outcomes + a

  const Matrix& op(int x, int a) const { return projectors[x * n_outcomes + a]; }
  Matrix& op(int x, int a) { return projectors[x * n_outcomes + a]; }
  int dim() const { return projectors.empty() ? 0 : static_cast<int>(projectors[0].rows()); }
};

/// The five mutually unbiased bases of dimension 4, as rank-1 projector sets.
/// One sign in the published table of basis 3 is repaired so that the family
/// is exactly unbiased; construction verifies the property and throws on
/// corruption.
MeasurementSet build_mubs_d4();

/// The same table with the defective |phi_{4|3}> kept verbatim. Fails
/// verify_mub; retained for self-test fault injection.
MeasurementSet build_mubs_d4_verbatim();

/// Restriction of a measurement set to the settings listed in
/// `basis_indices` (1-based).
MeasurementSet select_settings(const MeasurementSet& set, const std::vector<int>& basis_indices);

/// Conjugate every projector by u (basis change M -> u M u^dag).
MeasurementSet conjugate_measurements(const MeasurementSet& set, const Matrix& u);

/// Pauli eigenbasis measurements on a qubit: X,Z (and optionally Y).
MeasurementSet qubit_pauli_measurements(bool include_y);

struct MubReport {
  double max_orthonormality_dev = 0.0;  // |tr(M_{a|x} M_{b|x}) - delta_ab|
  double max_completeness_dev = 0.0;    // |sum_a M_{a|x} - I|
  double max_unbiasedness_dev = 0.0;    // |tr(M_{a|x} M_{b|y}) - 1/d|, x != y
  double max_projectivity_dev = 0.0;    // |M^2 - M|
  bool pass = false;
};

/// Checks orthonormality, completeness, unbiasedness and projectivity.
/// Pass iff every deviation is below 1e-10.
MubReport verify_mub(const MeasurementSet& set, int dim);

}  // namespace tempsteer::steering
