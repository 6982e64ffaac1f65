// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <sstream>

#include "dynamics/models.hpp"
#include "runner/experiment.hpp"
#include "steering/mub.hpp"
#include "tsr/tsr.hpp"

namespace tempsteer::runner {

namespace {

using qmat::Matrix;
using steering::Assemblage;
using steering::MeasurementSet;

class Suite {
 public:
  void check(const std::string& name, bool ok, const std::string& detail = "") {
    out_ << (ok ? "[ok]   " : "[FAIL] ") << name;
    if (!detail.empty()) out_ << " (" << detail << ")";
    out_ << '\n';
    passed_ &= ok;
  }
  bool passed() const { return passed_; }
  std::string text() const { return out_.str(); }

 private:
  std::ostringstream out_;
  bool passed_ = true;
};

Assemblage measure_on_mixed(const MeasurementSet& meas, int dim) {
  Assemblage a;
  a.dim = dim;
  a.n_settings = meas.n_settings;
  a.n_outcomes = meas.n_outcomes;
  for (const auto& m : meas.projectors) a.members.push_back(m / static_cast<double>(dim));
  return a;
}

}  // namespace

SelfTestReport check_suite(const SelfTestOptions& opts) {
  Suite suite;
  tsr::SolverOptions solver_opts;
  if (opts.solver_iteration_cap > 0) solver_opts.max_iterations = opts.solver_iteration_cap;

  // Measurement table.
  const MeasurementSet table =
      opts.corrupt_mubs ? steering::build_mubs_d4_verbatim() : steering::build_mubs_d4();
  const auto report = steering::verify_mub(table, 4);
  suite.check("mub-table: orthonormal, complete, unbiased", report.pass,
              "max deviation " +
                  format_double(std::max({report.max_orthonormality_dev,
                                          report.max_completeness_dev,
                                          report.max_unbiasedness_dev})));
  const auto verbatim_report = steering::verify_mub(steering::build_mubs_d4_verbatim(), 4);
  suite.check("mub-table: defective published vector is rejected", !verbatim_report.pass);

  // Solver floor cases.
  try {
    const MeasurementSet mubs = steering::build_mubs_d4();
    const Assemblage single = measure_on_mixed(steering::select_settings(mubs, {1}), 4);
    const auto sol1 = tsr::tsr_solve(single, solver_opts);
    suite.check("solver: single setting is unsteerable",
                sol1.status == tsr::SolveStatus::Optimal && std::abs(sol1.primal_value) < 1e-7,
                "value " + format_double(sol1.primal_value));

    const Assemblage two = measure_on_mixed(steering::select_settings(mubs, {1, 2}), 4);
    const Assemblage flat = steering::depolarize(two, 1.0);
    const auto sol2 = tsr::tsr_solve(flat, solver_opts);
    suite.check("solver: fully depolarized assemblage is unsteerable",
                sol2.status == tsr::SolveStatus::Optimal && std::abs(sol2.primal_value) < 1e-7,
                "value " + format_double(sol2.primal_value));

    // X/Z on the maximally mixed qubit; optimum is 3 - 2 sqrt(2).
    const Assemblage xz = measure_on_mixed(steering::qubit_pauli_measurements(false), 2);
    const auto sol3 = tsr::tsr_solve(xz, solver_opts);
    const double expected = 3.0 - 2.0 * std::sqrt(2.0);
    suite.check("solver: X/Z qubit benchmark value",
                sol3.status == tsr::SolveStatus::Optimal &&
                    std::abs(sol3.primal_value - expected) < 1e-6,
                "value " + format_double(sol3.primal_value) + ", expected " +
                    format_double(expected));
    suite.check("solver: duality gap certificate", sol3.gap < 1e-7,
                "gap " + format_double(sol3.gap));
    const auto problem =
        tsr::assemble_problem(xz, steering::enumerate_strategies(2, 2));
    const auto cert = tsr::dual_certificate_check(sol3, problem);
    suite.check("solver: dual certificate recheck", cert.pass && !cert.vacuous);

    const auto sol4 = tsr::tsr_solve(two, solver_opts);
    suite.check("solver: two d=4 bases at t=0 are incompatible",
                sol4.status == tsr::SolveStatus::Optimal && sol4.primal_value > 0.1 &&
                    sol4.gap < 1e-7,
                "value " + format_double(sol4.primal_value));
  } catch (const std::exception& e) {
    suite.check("solver: benchmark problems", false, e.what());
  }

  // Pipeline invariants on a short coupled-qubit evolution.
  try {
    const auto l = dynamics::build_coupled_qubit_liouvillian({1.0, 1.0});
    const MeasurementSet mubs = steering::select_settings(steering::build_mubs_d4(), {1, 2});
    const Assemblage asm0 = steering::initial_assemblage(
        0.25 * qmat::identity(4), mubs, l.space(), {"qubit1", "qubit2"});
    const auto evolved =
        steering::evolve_assemblage(asm0, l, {0.0, 0.3, 1.0}, std::nullopt);
    double worst = 0.0;
    for (const auto& slice : evolved) {
      const auto c = slice.consistency();
      worst = std::max({worst, c.max_signaling, c.trace_defect, -c.min_eigenvalue});
    }
    suite.check("pipeline: evolved assemblage stays consistent", worst < 1e-8,
                "worst deviation " + format_double(worst));
  } catch (const std::exception& e) {
    suite.check("pipeline: evolved assemblage stays consistent", false, e.what());
  }

  const auto strategies = steering::enumerate_strategies(5, 4);
  bool covering = strategies.count() == 1024;
  for (int x = 0; x < 5 && covering; ++x)
    for (int a = 0; a < 4 && covering; ++a) {
      int count = 0;
      for (int l = 0; l < strategies.count(); ++l)
        if (strategies.d(l, a, x)) ++count;
      covering = (count == 256);
    }
  suite.check("strategies: 4^5 enumeration covers uniformly", covering);

  return {suite.passed(), suite.text()};
}

}  // namespace tempsteer::runner
