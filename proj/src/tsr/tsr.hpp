// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tsr/sdp.hpp"

namespace tempsteer::tsr {

/// Temporal steering robustness of an assemblage: enumerate the deterministic
/// strategies, assemble the program, solve, and clamp the tiny-value floor
/// ([-1e-7, 1e-9] reads as exactly unsteerable).
double tsr(const Assemblage& a, const SolverOptions& opts = {});

/// Same pipeline returning the full solution record.
SdpSolution tsr_solve(const Assemblage& a, const SolverOptions& opts = {});

struct CertificateReport {
  double dual_value = 0.0;        // recomputed from the stored multipliers
  double dual_feasibility = 0.0;  // worst violation of F >= 0 and sum_x F <= I
  bool vacuous = false;           // certificate proves nothing beyond TSR >= 0
  bool pass = false;
};

/// Recomputes dual feasibility and the dual objective from the stored
/// multipliers, independent of the solver's internal bookkeeping.
/// Pass iff dual_value <= primal + 1e-7 and dual_feasibility < 1e-7.
CertificateReport dual_certificate_check(const SdpSolution& sol, const SdpProblem& problem);

}  // namespace tempsteer::tsr
