// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dynamics/liouvillian.hpp"

namespace tempsteer::dynamics {

struct IntegratorOptions {
  enum class Method { AdaptiveRk45, Exponential };
  Method method = Method::AdaptiveRk45;
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  /// Outputs are re-hermitized and eigenvalues in [psd_floor, 0) are clipped
  /// to zero with the trace restored.
  double psd_floor = -1e-8;
};

/// Density matrices at the requested times (ascending, first >= 0).
/// Throws NumericalError on step-size underflow or a PSD-floor violation.
std::vector<Matrix> propagate(const Liouvillian& l, const Matrix& rho0,
                              const std::vector<double>& times,
                              const IntegratorOptions& opts = {});

/// exp(superoperator * t) applied to vec(v), evaluated with a scaled
/// truncated-Taylor product. Used for time-independent generators and as a
/// cross-check route against the adaptive integrator.
Vector expm_multiply(const SparseMatrix& superop, const Vector& v, double t);

struct ReductionSpec {
  enum class Mode { TraceOut, Project };
  Mode mode = Mode::TraceOut;
  /// Subsystems that survive the reduction, in label order.
  std::vector<std::string> keep;
  /// Project mode only: idempotent projector on the full space, applied
  /// before renormalization and the final partial trace onto `keep`.
  std::optional<Matrix> projector;
};

/// Trace-out mode: partial trace onto `keep`. Project mode: P rho P / tr(P rho P),
/// then partial trace onto `keep`. Throws NumericalError when the projected
/// weight falls below 1e-12.
Matrix reduce(const Matrix& rho, const SpaceLabel& label, const ReductionSpec& spec);

}  // namespace tempsteer::dynamics
