// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#include "dynamics/propagate.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"
#include "qmat/qmat.hpp"

namespace tempsteer::dynamics {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0, kA53 = 64448.0 / 6561.0,
                 kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
                 kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
// 5th-order minus embedded 4th-order weights.
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0, kE4 = 71.0 / 1920.0,
                 kE5 = -17253.0 / 339200.0, kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

double error_norm(const Matrix& err, const Matrix& y0, const Matrix& y1, double rtol, double atol) {
  double acc = 0.0;
  const auto* e = err.data();
  const auto* a = y0.data();
  const auto* b = y1.data();
  const Eigen::Index n = err.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double scale = atol + rtol * std::max(std::abs(a[i]), std::abs(b[i]));
    const double r = std::abs(e[i]) / scale;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

class Rk45 {
 public:
  Rk45(const Liouvillian& l, double rtol, double atol) : l_(l), rtol_(rtol), atol_(atol) {}

  // Advances rho from t0 to t1 exactly (steps clipped to land on t1).
  void advance(Matrix& rho, double t0, double t1) {
    if (t1 <= t0) return;
    const double span = t1 - t0;
    double t = t0;
    if (!have_k1_) {
      k1_ = l_.apply(rho);
      have_k1_ = true;
    }
    if (h_ <= 0.0) h_ = initial_step(rho, span);

    while (t < t1) {
      bool clipped = false;
      double h = h_;
      if (t + h >= t1) {
        h = t1 - t;
        clipped = true;
      }

      const Matrix k2 = l_.apply(rho + h * (kA21 * k1_));
      const Matrix k3 = l_.apply(rho + h * (kA31 * k1_ + kA32 * k2));
      const Matrix k4 = l_.apply(rho + h * (kA41 * k1_ + kA42 * k2 + kA43 * k3));
      const Matrix k5 = l_.apply(rho + h * (kA51 * k1_ + kA52 * k2 + kA53 * k3 + kA54 * k4));
      const Matrix k6 =
          l_.apply(rho + h * (kA61 * k1_ + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5));
      const Matrix y5 = rho + h * (kB1 * k1_ + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
      const Matrix k7 = l_.apply(y5);  // FSAL
      const Matrix err =
          h * (kE1 * k1_ + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);

      const double en = error_norm(err, rho, y5, rtol_, atol_);
      if (en <= 1.0) {
        t += h;
        rho = y5;
        k1_ = k7;
      }
      double factor = (en > 0.0) ? 0.9 * std::pow(en, -0.2) : 5.0;
      factor = std::clamp(factor, 0.2, 5.0);
      const double h_new = h * factor;
      if (!clipped || en > 1.0) h_ = h_new;
      if (h_ < 1e-15 * span)
        throw NumericalError("integrator step size underflow; tolerance not met");
    }
  }

 private:
  double initial_step(const Matrix& rho, double span) const {
    const double d0 = rho.norm();
    const double d1 = k1_.norm();
    double h = (d1 > 1e-300) ? 0.01 * std::max(d0, 1e-12) / d1 : span * 1e-6;
    return std::min(h, span);
  }

  const Liouvillian& l_;
  double rtol_, atol_;
  double h_ = 0.0;
  Matrix k1_;
  bool have_k1_ = false;
};

Matrix postprocess(const Matrix& rho, double psd_floor) {
  const Matrix h = 0.5 * (rho + rho.adjoint());
  if (h.cwiseAbs().maxCoeff() == 0.0) return h;  // zero-weight member
  return qmat::clip_psd(h, psd_floor);
}

}  // namespace

Vector expm_multiply(const SparseMatrix& superop, const Vector& v, double t) {
  if (t == 0.0) return v;
  // One-norm of t*superop decides the substep count; each substep sums the
  // Taylor series to machine precision.
  double norm1 = 0.0;
  for (int k = 0; k < superop.outerSize(); ++k) {
    double col = 0.0;
    for (SparseMatrix::InnerIterator it(superop, k); it; ++it) col += std::abs(it.value());
    norm1 = std::max(norm1, col);
  }
  const int substeps = std::max(1, static_cast<int>(std::ceil(norm1 * std::abs(t))));
  const double dt = t / substeps;

  Vector w = v;
  for (int s = 0; s < substeps; ++s) {
    Vector term = w;
    Vector acc = w;
    for (int k = 1; k <= 64; ++k) {
      term = (superop * term) * (dt / k);
      acc += term;
      if (term.norm() <= 1e-18 * std::max(1.0, acc.norm())) break;
    }
    w = acc;
  }
  return w;
}

std::vector<Matrix> propagate(const Liouvillian& l, const Matrix& rho0,
                              const std::vector<double>& times, const IntegratorOptions& opts) {
  const int n = l.dim();
  if (rho0.rows() != n || rho0.cols() != n)
    throw ValidationError("initial state dimension does not match the Liouvillian");
  if (times.empty()) return {};
  if (times.front() < 0.0) throw ValidationError("times must start at or after 0");
  for (size_t i = 1; i < times.size(); ++i)
    if (times[i] <= times[i - 1]) throw ValidationError("times must be strictly ascending");

  std::vector<Matrix> out;
  out.reserve(times.size());

  if (opts.method == IntegratorOptions::Method::Exponential) {
    const SparseMatrix superop = l.superoperator();
    Vector w = Eigen::Map<const Vector>(rho0.data(), rho0.size());
    double t_prev = 0.0;
    for (double t : times) {
      w = expm_multiply(superop, w, t - t_prev);
      t_prev = t;
      const Matrix rho = Eigen::Map<const Matrix>(w.data(), n, n);
      out.push_back(t == 0.0 ? rho0 : postprocess(rho, opts.psd_floor));
    }
    return out;
  }

  Rk45 stepper(l, opts.rel_tol, opts.abs_tol);
  Matrix rho = rho0;
  double t_prev = 0.0;
  for (double t : times) {
    stepper.advance(rho, t_prev, t);
    t_prev = t;
    out.push_back(t == 0.0 ? rho0 : postprocess(rho, opts.psd_floor));
  }
  return out;
}

Matrix reduce(const Matrix& rho, const SpaceLabel& label, const ReductionSpec& spec) {
  if (spec.mode == ReductionSpec::Mode::TraceOut)
    return qmat::partial_trace(rho, label, spec.keep);

  if (!spec.projector.has_value())
    throw ValidationError("project-and-renormalize requires a projector");
  const Matrix& p = *spec.projector;
  if (p.rows() != rho.rows() || p.cols() != rho.cols())
    throw ValidationError("projector dimension mismatch");
  if ((p * p - p).cwiseAbs().maxCoeff() > 1e-10)
    throw ValidationError("projector is not idempotent");

  const Matrix projected = p * rho * p;
  const double weight = projected.trace().real();
  if (weight < 1e-12)
    throw NumericalError("projected weight below 1e-12; population fully decayed");
  return qmat::partial_trace(projected / weight, label, spec.keep);
}

}  // namespace tempsteer::dynamics
