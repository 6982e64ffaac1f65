// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#include "runner/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "common/error.hpp"
#include "common/parallel.hpp"
#include "dynamics/models.hpp"
#include "runner/csv.hpp"
#include "steering/mub.hpp"
#include "tsr/tsr.hpp"

namespace tempsteer::runner {

namespace {

using dynamics::IntegratorOptions;
using dynamics::Liouvillian;
using dynamics::ReductionSpec;
using qmat::Matrix;
using qmat::SpaceLabel;
using steering::Assemblage;
using steering::MeasurementSet;

struct ModelSetup {
  Liouvillian liouvillian;
  Matrix rho0;
  MeasurementSet measurements;  // on the measured pair, in the model's basis
  std::vector<std::string> measured;
  std::optional<ReductionSpec> reduction;
  double seconds_per_unit = 1.0;
  SpaceLabel pair_label;  // the two measured qubits, for the negativity cut
};

double get_num(const nlohmann::json& params, const char* key) {
  return params.at(key).get<double>();
}

ModelSetup build_setup(const ExperimentConfig& cfg, const nlohmann::json& params) {
  const MeasurementSet mubs = steering::build_mubs_d4();

  switch (cfg.model) {
    case Model::CoupledQubits: {
      dynamics::CoupledQubitParams p;
      p.g = get_num(params, "g");
      p.gamma = get_num(params, "gamma") * p.g;  // config gamma is a multiple of g
      double scale = 1.0;
      if (cfg.time.unit == TimeUnit::InverseGamma) {
        if (p.gamma <= 0.0)
          throw ValidationError("config.time.unit: 1/gamma requires gamma > 0");
        scale = 1.0 / p.gamma;
      } else if (cfg.time.unit == TimeUnit::Seconds) {
        scale = 1.0;
      } else {
        throw ValidationError("config.time.unit: coupled-qubits supports seconds | 1/gamma");
      }
      if (cfg.reduction == "project")
        throw ValidationError("config.reduction: project applies to radical-pair only");
      return {dynamics::build_coupled_qubit_liouvillian(p),
              0.25 * qmat::identity(4),
              mubs,
              {"qubit1", "qubit2"},
              std::nullopt,
              scale,
              SpaceLabel{{"qubit1", 2}, {"qubit2", 2}}};
    }
    case Model::RadicalPair: {
      dynamics::RadicalPairParams p;
      p.b0 = get_num(params, "b0_tesla");
      p.theta = get_num(params, "theta");
      p.phi = get_num(params, "phi");
      for (int k = 0; k < 3; ++k) p.hyperfine[k] = params.at("hyperfine")[k].get<double>();
      p.kappa = get_num(params, "kappa");
      p.gamma_dephasing = get_num(params, "gamma_dephasing");
      if (params.contains("gyromagnetic")) p.gyromagnetic = get_num(params, "gyromagnetic");

      double scale = 1.0;
      if (cfg.time.unit == TimeUnit::Microseconds)
        scale = 1e-6;
      else if (cfg.time.unit != TimeUnit::Seconds)
        throw ValidationError("config.time.unit: radical-pair supports seconds | microseconds");

      Liouvillian l = dynamics::build_radical_pair_liouvillian(p);

      // Maximally mixed electrons + nucleus, shelving ancillas in S0 T0.
      Matrix shelf = Matrix::Zero(4, 4);
      shelf(0, 0) = 1.0;
      const Matrix rho0 = qmat::kron(qmat::identity(8) / 8.0, shelf);

      // Measurement kets are written in the singlet/triplet basis.
      const MeasurementSet meas =
          steering::conjugate_measurements(mubs, dynamics::two_electron_st_basis());

      ReductionSpec spec;
      spec.keep = {"electron1", "electron2"};
      if (cfg.reduction == "project") {
        spec.mode = ReductionSpec::Mode::Project;
        spec.projector = qmat::kron(qmat::identity(8), shelf);
      }
      return {std::move(l),
              rho0,
              meas,
              {"electron1", "electron2"},
              spec,
              scale,
              SpaceLabel{{"electron1", 2}, {"electron2", 2}}};
    }
    case Model::SimplifiedRp: {
      dynamics::SimplifiedRpParams p;
      p.a = get_num(params, "a");
      p.a_z = get_num(params, "a_z");
      double scale = 1.0;
      if (cfg.time.unit == TimeUnit::InverseAz) {
        if (p.a_z == 0.0)
          throw ValidationError("config.time.unit: 1/a_z requires a_z != 0");
        scale = 1.0 / std::abs(p.a_z);
      } else if (cfg.time.unit != TimeUnit::Seconds) {
        throw ValidationError("config.time.unit: simplified-rp supports seconds | 1/a_z");
      }
      if (cfg.reduction == "project")
        throw ValidationError("config.reduction: project applies to radical-pair only");

      const MeasurementSet meas =
          steering::conjugate_measurements(mubs, dynamics::two_electron_st_basis());
      ReductionSpec spec;
      spec.keep = {"electron1", "electron2"};
      return {dynamics::build_simplified_rp_liouvillian(p),
              dynamics::simplified_rp_initial_state(p),
              meas,
              {"electron1", "electron2"},
              spec,
              scale,
              SpaceLabel{{"electron1", 2}, {"electron2", 2}}};
    }
  }
  throw ValidationError("unknown model");
}

CurveResult run_curve(const ExperimentConfig& cfg, const CurveSpec& curve,
                      const std::vector<double>& grid_units) {
  nlohmann::json params = cfg.params;
  params.update(curve.param_overrides);
  const ModelSetup setup = build_setup(cfg, params);

  std::vector<double> times(grid_units.size());
  for (size_t k = 0; k < grid_units.size(); ++k)
    times[k] = grid_units[k] * setup.seconds_per_unit;

  IntegratorOptions iopts;
  iopts.method = (cfg.integrator == "expm") ? IntegratorOptions::Method::Exponential
                                            : IntegratorOptions::Method::AdaptiveRk45;

  const MeasurementSet selected = steering::select_settings(setup.measurements, cfg.settings);
  const Assemblage asm0 = steering::initial_assemblage(
      setup.rho0, selected, setup.liouvillian.space(), setup.measured);
  const std::vector<Assemblage> evolved = steering::evolve_assemblage(
      asm0, setup.liouvillian, times, setup.reduction, iopts, cfg.threads);

  // Unmeasured reference trajectory for the entanglement track.
  const std::vector<Matrix> rho_traj =
      dynamics::propagate(setup.liouvillian, setup.rho0, times, iopts);

  CurveResult result;
  result.label = curve.label;
  const size_t n_times = times.size();
  result.tsr.times = grid_units;
  result.tsr.values.resize(n_times);
  result.negativity.times = grid_units;
  result.negativity.values.resize(n_times);
  result.probabilities.resize(n_times);
  result.stats.resize(n_times);

  parallel_for(
      static_cast<int>(n_times),
      [&](int k) {
        PointStats st;
        st.time = grid_units[k];
        try {
          const tsr::SdpSolution sol = tsr::tsr_solve(evolved[k], cfg.solver);
          st.value = sol.primal_value;
          st.gap = sol.gap;
          st.iterations = sol.iterations;
          st.status = tsr::to_string(sol.status);
          st.wall_seconds = sol.wall_seconds;
          result.tsr.values[k] =
              (sol.status == tsr::SolveStatus::Optimal && sol.primal_value < 1e-9)
                  ? 0.0
                  : sol.primal_value;
        } catch (const std::exception& e) {
          st.status = std::string("error: ") + e.what();
          st.value = std::nan("");
          result.tsr.values[k] = std::nan("");
        }
        result.stats[k] = st;

        Matrix pair = setup.reduction.has_value()
                          ? dynamics::reduce(rho_traj[k], setup.liouvillian.space(),
                                             *setup.reduction)
                          : rho_traj[k];
        result.negativity.values[k] =
            measures::negativity(pair, setup.pair_label, setup.pair_label.factor_name(0));

        auto& probs = result.probabilities[k];
        for (const auto& m : evolved[k].members) probs.push_back(m.trace().real());
      },
      cfg.threads);

  for (size_t k = 0; k < n_times; ++k) {
    if (std::isfinite(result.tsr.values[k]) && result.tsr.values[k] < 1e-6) {
      result.vanish_time = grid_units[k];
      result.vanish_bracket = std::make_pair(grid_units[k == 0 ? 0 : k - 1], grid_units[k]);
      break;
    }
  }
  return result;
}

std::string time_header(TimeUnit unit) { return std::string("time (") + to_string(unit) + ")"; }

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  namespace fs = std::filesystem;

  std::vector<double> grid(cfg.time.points);
  for (int k = 0; k < cfg.time.points; ++k)
    grid[k] = cfg.time.start +
              (cfg.time.stop - cfg.time.start) * static_cast<double>(k) /
                  static_cast<double>(cfg.time.points - 1);

  ExperimentResult result;
  result.config = cfg;
  for (const auto& curve : cfg.curves) result.curves.push_back(run_curve(cfg, curve, grid));

  std::error_code ec;
  fs::create_directories(cfg.output, ec);
  if (ec) throw ValidationError("cannot create output directory '" + cfg.output + "'");

  auto emit = [&](const std::string& name, const std::string& value_header,
                  const measures::TimeSeries& series) {
    const std::string path = (fs::path(cfg.output) / name).string();
    CsvWriter csv(path);
    csv.row({time_header(cfg.time.unit), value_header});
    for (size_t k = 0; k < series.times.size(); ++k)
      csv.row({format_double(series.times[k]), format_double(series.values[k])});
    result.files_written.push_back(path);
  };

  for (const auto& curve : result.curves) {
    emit("tsr_" + curve.label + ".csv", "tsr", curve.tsr);
    emit("negativity_" + curve.label + ".csv", "negativity", curve.negativity);

    const std::string ppath = (fs::path(cfg.output) / ("probabilities_" + curve.label + ".csv")).string();
    CsvWriter pcsv(ppath);
    std::vector<std::string> header{time_header(cfg.time.unit)};
    for (int x : cfg.settings)
      for (int a = 1; a <= 4; ++a)
        header.push_back("p(" + std::to_string(a) + "|" + std::to_string(x) + ")");
    pcsv.row(header);
    for (size_t k = 0; k < curve.tsr.times.size(); ++k) {
      std::vector<std::string> row{format_double(curve.tsr.times[k])};
      for (double p : curve.probabilities[k]) row.push_back(format_double(p));
      pcsv.row(row);
    }
    result.files_written.push_back(ppath);
  }

  {
    const std::string vpath = (fs::path(cfg.output) / "vanish_times.csv").string();
    CsvWriter vcsv(vpath);
    vcsv.row({"curve", "vanish_time", "bracket_low", "bracket_high"});
    for (const auto& curve : result.curves) {
      if (curve.vanish_time.has_value())
        vcsv.row({curve.label, format_double(*curve.vanish_time),
                  format_double(curve.vanish_bracket->first),
                  format_double(curve.vanish_bracket->second)});
      else
        vcsv.row({curve.label, "", "", ""});
    }
    result.files_written.push_back(vpath);
  }

  nlohmann::json manifest;
  manifest["tempsteer_version"] = kVersion;
  manifest["config"] = cfg.resolved;
  manifest["time_unit"] = to_string(cfg.time.unit);
  nlohmann::json curves = nlohmann::json::array();
  for (const auto& curve : result.curves) {
    nlohmann::json c;
    c["label"] = curve.label;
    if (curve.vanish_time.has_value()) {
      c["vanish_time"] = *curve.vanish_time;
      c["vanish_bracket"] = {curve.vanish_bracket->first, curve.vanish_bracket->second};
    } else {
      c["vanish_time"] = nullptr;
    }
    nlohmann::json stats = nlohmann::json::array();
    for (const auto& st : curve.stats)
      stats.push_back({{"time", st.time},
                       {"value", st.value},
                       {"gap", st.gap},
                       {"iterations", st.iterations},
                       {"status", st.status},
                       {"wall_seconds", st.wall_seconds}});
    c["solver_stats"] = std::move(stats);
    curves.push_back(std::move(c));
  }
  manifest["curves"] = std::move(curves);

  const std::string mpath = (fs::path(cfg.output) / "manifest.json").string();
  std::ofstream mout(mpath);
  if (!mout) throw ValidationError("cannot write manifest '" + mpath + "'");
  mout << manifest.dump(2) << '\n';
  result.files_written.push_back(mpath);

  return result;
}

}  // namespace tempsteer::runner
