// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "measures/measures.hpp"
#include "runner/config.hpp"
#include "steering/assemblage.hpp"

namespace tempsteer::runner {

struct PointStats {
  double time = 0.0;  // declared unit
  double value = 0.0;
  double gap = 0.0;
  int iterations = 0;
  std::string status;
  double wall_seconds = 0.0;
};

struct CurveResult {
  std::string label;
  measures::TimeSeries tsr;         // times in the declared unit
  measures::TimeSeries negativity;  // of the two measured qubits
  std::vector<std::vector<double>> probabilities;  // [time][member]
  std::vector<PointStats> stats;
  std::optional<double> vanish_time;  // first grid time with TSR < 1e-6
  std::optional<std::pair<double, double>> vanish_bracket;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<CurveResult> curves;
  std::vector<std::string> files_written;
};

/// Runs measure -> evolve -> reduce -> solve over the configured grid and
/// writes one CSV per observable plus a manifest. Solver failures at single
/// grid points are recorded in the stats without aborting the sweep.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct SelfTestOptions {
  bool corrupt_mubs = false;
  int solver_iteration_cap = 0;  // > 0 caps interior-point iterations
};

struct SelfTestReport {
  bool passed = false;
  std::string text;
};

/// Measurement-table verification, solver sanity problems with certificate
/// checks, and pipeline invariant spot checks.
SelfTestReport check_suite(const SelfTestOptions& opts = {});

}  // namespace tempsteer::runner
