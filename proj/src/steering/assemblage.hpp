// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dynamics/propagate.hpp"
#include "qmat/qmat.hpp"
#include "steering/mub.hpp"

namespace tempsteer::steering {

using dynamics::Liouvillian;
using dynamics::ReductionSpec;
using qmat::Matrix;
using qmat::SpaceLabel;

/// Subnormalized post-measurement states sigma_{a|x} = p(a|x) * state.
struct Assemblage {
  int dim = 0;
  int n_settings = 0;
  int n_outcomes = 0;
  std::vector<Matrix> members;  // index x * n_outcomes + a

  const Matrix& member(int x, int a) const { return members[x * n_outcomes + a]; }
  Matrix& member(int x, int a) { return members[x * n_outcomes + a]; }
  Matrix total_state(int x) const;                 // sum_a sigma_{a|x}
  double probability(int x, int a) const;          // tr sigma_{a|x}

  /// Largest violation of the defining invariants: cross-setting consistency
  /// (Frobenius), PSD floor, and unit total trace.
  struct Consistency {
    double max_signaling = 0.0;   // max_x,x' |sum_a s_{a|x} - sum_a s_{a|x'}|_F
    double min_eigenvalue = 0.0;
    double trace_defect = 0.0;    // |tr sum_a sigma_{a|x} - 1|
  };
  Consistency consistency() const;
  void require_valid(double tol = 1e-8) const;  // throws ValidationError
};

/// Members (I_pre (x) M_{a|x} (x) I_post) rho0 (...)^dag. The measured
/// subsystems must be contiguous in label order and their joint dimension
/// must match the measurement set.
Assemblage initial_assemblage(const Matrix& rho0, const MeasurementSet& meas,
                              const SpaceLabel& label, const std::vector<std::string>& measured);

/// Each member propagated independently and reduced per `spec`. In project
/// mode all members of one time slice share the common survival weight so the
/// reduced assemblage keeps unit total trace and cross-setting consistency.
std::vector<Assemblage> evolve_assemblage(const Assemblage& asm0, const Liouvillian& l,
                                          const std::vector<double>& times,
                                          const std::optional<ReductionSpec>& spec,
                                          const dynamics::IntegratorOptions& opts = {},
                                          int threads = 0);

/// Member-wise depolarization sigma -> (1-q) sigma + q tr(sigma) I/d.
Assemblage depolarize(const Assemblage& a, double strength);

/// Member-wise application of an arbitrary map.
Assemblage map_members(const Assemblage& a, const std::function<Matrix(const Matrix&)>& fn);

// --- deterministic hidden-state strategies --------------------------------

/// All functions lambda: settings -> outcomes, in lexicographic order with
/// the first setting as the most significant digit.
class DeterministicStrategySet {
 public:
  DeterministicStrategySet(int n_settings, int n_outcomes);

  int n_settings() const { return n_settings_; }
  int n_outcomes() const { return n_outcomes_; }
  int count() const { return static_cast<int>(outcomes_.size()); }
  int outcome(int lambda, int x) const { return outcomes_[lambda][x]; }
  bool d(int lambda, int a, int x) const { return outcomes_[lambda][x] == a; }

 private:
  int n_settings_;
  int n_outcomes_;
  std::vector<std::vector<std::uint8_t>> outcomes_;
};

/// Complete enumeration; throws ValidationError when n_a^n_x exceeds 1e6.
DeterministicStrategySet enumerate_strategies(int n_settings, int n_outcomes);

// --- serialization ---------------------------------------------------------

/// Self-describing JSON with full double precision; schema in
/// docs/assemblage_format.md.
std::string assemblage_to_json(const Assemblage& a);
Assemblage assemblage_from_json(const std::string& text);
void save_assemblage(const Assemblage& a, const std::string& path);
Assemblage load_assemblage(const std::string& path);

}  // namespace tempsteer::steering
