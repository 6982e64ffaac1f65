// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "tsr/sdp.hpp"

namespace tempsteer::runner {

inline constexpr const char* kVersion = "1.0.0";

enum class Model { CoupledQubits, RadicalPair, SimplifiedRp };

Model model_from_string(const std::string& s);
const char* to_string(Model m);

/// Time grids carry an explicit unit; the pipeline converts to seconds
/// internally and writes the declared unit to the CSV header.
enum class TimeUnit { Seconds, Microseconds, InverseGamma, InverseAz };

TimeUnit time_unit_from_string(const std::string& s);
const char* to_string(TimeUnit u);

struct TimeGrid {
  double start = 0.0;
  double stop = 1.0;
  int points = 2;
  TimeUnit unit = TimeUnit::Seconds;
};

struct CurveSpec {
  std::string label;
  nlohmann::json param_overrides;  // merged over the base "params" object
};

struct ExperimentConfig {
  Model model = Model::CoupledQubits;
  std::vector<int> settings = {1, 2};  // basis indices, 1-based
  TimeGrid time;
  std::string reduction = "trace-out";  // "trace-out" | "project"
  std::string integrator = "rk45";      // "rk45" | "expm"
  tsr::SolverOptions solver;
  std::string output;
  int threads = 0;  // 0 = hardware concurrency
  nlohmann::json params;
  std::vector<CurveSpec> curves;

  nlohmann::json resolved;  // full config with defaults filled, for the manifest
};

/// Parses and validates; error messages carry the offending config path.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

nlohmann::json default_params(Model m);
TimeGrid default_time_grid(Model m);

}  // namespace tempsteer::runner
