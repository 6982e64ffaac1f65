// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "dynamics/models.hpp"
#include "qmat/qmat.hpp"

namespace tempsteer::measures {

using dynamics::SimplifiedRpParams;
using qmat::Matrix;
using qmat::SpaceLabel;

/// Entanglement negativity across the cut separating `party` from the rest:
/// N = (||rho^{T_party}||_1 - 1)/2, equal to the magnitude of the negative
/// part of the partial-transpose spectrum. A singlet gives 0.5.
double negativity(const Matrix& rho, const SpaceLabel& label, const std::string& party);

/// Closed-form state of the coherent three-spin model at time t:
/// rho(t) = a U+ |s><s| U+^dag (x) |up><up|
///        + (1-a) U- |s><s| U-^dag (x) |down><down|,  U± = exp(±i a_z sigma_z^1 t).
Matrix simplified_rp_state(const SimplifiedRpParams& p, double t);

struct TimeSeries {
  std::vector<double> times;   // strictly ascending
  std::vector<double> values;
};

/// Sum of the positive rises sum_k max(0, v_{k+1} - v_k); zero exactly when
/// the sampled series never increases. Nonzero rises of a quantity that is
/// monotone under divisible dynamics witness non-Markovianity.
double nonmonotonicity(const TimeSeries& series);

}  // namespace tempsteer::measures
