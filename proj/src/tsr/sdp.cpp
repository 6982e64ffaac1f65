// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#include "tsr/sdp.hpp"

#include "common/error.hpp"

namespace tempsteer::tsr {

RealMatrix realify(const Matrix& h) {
  const int d = static_cast<int>(h.rows());
  RealMatrix out(2 * d, 2 * d);
  out.topLeftCorner(d, d) = h.real();
  out.bottomRightCorner(d, d) = h.real();
  out.topRightCorner(d, d) = -h.imag();
  out.bottomLeftCorner(d, d) = h.imag();
  return out;
}

Matrix derealify(const RealMatrix& y) {
  const int d = static_cast<int>(y.rows()) / 2;
  const RealMatrix re = 0.5 * (y.topLeftCorner(d, d) + y.bottomRightCorner(d, d));
  const RealMatrix im = 0.5 * (y.bottomLeftCorner(d, d) - y.topRightCorner(d, d));
  Matrix h(d, d);
  h.real() = 0.5 * (re + re.transpose());
  h.imag() = 0.5 * (im - im.transpose());
  return h;
}

SdpProblem assemble_problem(const Assemblage& a, const DeterministicStrategySet& strategies) {
  if (a.n_settings != strategies.n_settings() || a.n_outcomes != strategies.n_outcomes())
    throw ValidationError("assemblage and strategy set disagree on settings/outcomes");
  if (a.members.size() != static_cast<size_t>(a.n_settings) * a.n_outcomes)
    throw ValidationError("assemblage member count mismatch");

  SdpProblem p;
  p.d = a.dim;
  p.n_settings = a.n_settings;
  p.n_outcomes = a.n_outcomes;
  p.strategies = strategies;
  for (const auto& m : a.members) {
    if (m.rows() != a.dim || m.cols() != a.dim)
      throw ValidationError("assemblage member has inconsistent dimension");
    // Propagation can leave eigenvalues a hair below zero; the cone data
    // must be exactly PSD.
    const Matrix clipped = qmat::clip_psd(0.5 * (m + m.adjoint()), -1e-8);
    p.sigma.push_back(clipped);
    p.data.push_back(realify(clipped));
  }
  return p;
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::IterationLimit: return "iteration-limit";
    case SolveStatus::InfeasibleNumerics: return "infeasible-numerics";
  }
  return "unknown";
}

}  // namespace tempsteer::tsr
