// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#include "runner/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "common/error.hpp"

namespace tempsteer::runner {

using nlohmann::json;

Model model_from_string(const std::string& s) {
  if (s == "coupled-qubits") return Model::CoupledQubits;
  if (s == "radical-pair") return Model::RadicalPair;
  if (s == "simplified-rp") return Model::SimplifiedRp;
  throw ValidationError("config.model: unknown model '" + s +
                        "' (expected coupled-qubits | radical-pair | simplified-rp)");
}

const char* to_string(Model m) {
  switch (m) {
    case Model::CoupledQubits: return "coupled-qubits";
    case Model::RadicalPair: return "radical-pair";
    case Model::SimplifiedRp: return "simplified-rp";
  }
  return "unknown";
}

TimeUnit time_unit_from_string(const std::string& s) {
  if (s == "seconds") return TimeUnit::Seconds;
  if (s == "microseconds") return TimeUnit::Microseconds;
  if (s == "1/gamma") return TimeUnit::InverseGamma;
  if (s == "1/a_z") return TimeUnit::InverseAz;
  throw ValidationError("config.time.unit: unknown unit '" + s +
                        "' (expected seconds | microseconds | 1/gamma | 1/a_z)");
}

const char* to_string(TimeUnit u) {
  switch (u) {
    case TimeUnit::Seconds: return "seconds";
    case TimeUnit::Microseconds: return "microseconds";
    case TimeUnit::InverseGamma: return "1/gamma";
    case TimeUnit::InverseAz: return "1/a_z";
  }
  return "unknown";
}

json default_params(Model m) {
  switch (m) {
    case Model::CoupledQubits:
      return json{{"g", 1.0}, {"gamma", 1.0}};
    case Model::RadicalPair:
      return json{{"b0_tesla", 47e-6},
                  {"theta", 0.0},
                  {"phi", 0.0},
                  {"hyperfine", {0.0, 0.0, 1e5}},
                  {"kappa", 1e4},
                  {"gamma_dephasing", 1e3}};
    case Model::SimplifiedRp:
      return json{{"a", 0.5}, {"a_z", 1e5}};
  }
  return {};
}

TimeGrid default_time_grid(Model m) {
  switch (m) {
    case Model::CoupledQubits:
      return {0.0, 5.0, 100, TimeUnit::InverseGamma};
    case Model::RadicalPair:
      return {0.0, 60.0, 120, TimeUnit::Microseconds};
    case Model::SimplifiedRp:
      return {0.0, 10.0 * M_PI, 200, TimeUnit::InverseAz};
  }
  return {};
}

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& path) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key))
      throw ValidationError("config." + path + (path.empty() ? "" : ".") + key +
                            ": unknown key");
}

double require_number(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw ValidationError("config." + path + key + ": missing");
  if (!obj.at(key).is_number())
    throw ValidationError("config." + path + key + ": expected a number");
  return obj.at(key).get<double>();
}

void validate_params(Model model, const json& params) {
  const json defaults = default_params(model);
  for (const auto& [key, _] : params.items())
    if (!defaults.contains(key))
      throw ValidationError("config.params." + key + ": unknown parameter for model " +
                            std::string(to_string(model)));
  switch (model) {
    case Model::CoupledQubits: {
      if (params.contains("g") && params.at("g").get<double>() <= 0.0)
        throw ValidationError("config.params.g: must be positive");
      if (params.contains("gamma") && params.at("gamma").get<double>() < 0.0)
        throw ValidationError("config.params.gamma: must be nonnegative");
      break;
    }
    case Model::RadicalPair: {
      if (params.contains("b0_tesla") && params.at("b0_tesla").get<double>() < 0.0)
        throw ValidationError("config.params.b0_tesla: must be nonnegative");
      if (params.contains("theta")) {
        const double theta = params.at("theta").get<double>();
        if (theta < 0.0 || theta > M_PI / 2.0 + 1e-12)
          throw ValidationError("config.params.theta: must lie in [0, pi/2]");
      }
      if (params.contains("hyperfine") &&
          (!params.at("hyperfine").is_array() || params.at("hyperfine").size() != 3))
        throw ValidationError("config.params.hyperfine: expected [Ax, Ay, Az]");
      for (const char* key : {"kappa", "gamma_dephasing"})
        if (params.contains(key) && params.at(key).get<double>() < 0.0)
          throw ValidationError(std::string("config.params.") + key + ": must be nonnegative");
      break;
    }
    case Model::SimplifiedRp: {
      if (params.contains("a")) {
        const double a = params.at("a").get<double>();
        if (a < 0.0 || a > 1.0)
          throw ValidationError("config.params.a: must lie in [0, 1]");
      }
      break;
    }
  }
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ValidationError("config: top level must be an object");
  reject_unknown_keys(doc,
                      {"model", "settings", "time", "reduction", "integrator", "solver",
                       "output", "threads", "params", "curves"},
                      "");

  ExperimentConfig cfg;
  if (!doc.contains("model")) throw ValidationError("config.model: missing");
  cfg.model = model_from_string(doc.at("model").get<std::string>());

  if (doc.contains("settings")) {
    if (!doc.at("settings").is_array() || doc.at("settings").empty())
      throw ValidationError("config.settings: expected a nonempty array of basis indices");
    cfg.settings.clear();
    for (const auto& v : doc.at("settings")) {
      const int idx = v.get<int>();
      if (idx < 1 || idx > 5)
        throw ValidationError("config.settings: basis index " + std::to_string(idx) +
                              " outside 1..5");
      cfg.settings.push_back(idx);
    }
  }

  cfg.time = default_time_grid(cfg.model);
  if (doc.contains("time")) {
    const json& t = doc.at("time");
    reject_unknown_keys(t, {"start", "stop", "points", "unit"}, "time");
    if (t.contains("start")) cfg.time.start = require_number(t, "start", "time.");
    if (t.contains("stop")) cfg.time.stop = require_number(t, "stop", "time.");
    if (t.contains("points")) cfg.time.points = t.at("points").get<int>();
    if (t.contains("unit")) cfg.time.unit = time_unit_from_string(t.at("unit").get<std::string>());
  }
  if (cfg.time.points < 2) throw ValidationError("config.time.points: must be >= 2");
  if (cfg.time.start < 0.0) throw ValidationError("config.time.start: must be >= 0");
  if (cfg.time.stop <= cfg.time.start)
    throw ValidationError("config.time.stop: must exceed start");

  if (doc.contains("reduction")) {
    cfg.reduction = doc.at("reduction").get<std::string>();
    if (cfg.reduction != "trace-out" && cfg.reduction != "project")
      throw ValidationError("config.reduction: expected trace-out | project");
  }
  if (doc.contains("integrator")) {
    cfg.integrator = doc.at("integrator").get<std::string>();
    if (cfg.integrator != "rk45" && cfg.integrator != "expm")
      throw ValidationError("config.integrator: expected rk45 | expm");
  }

  if (doc.contains("solver")) {
    const json& s = doc.at("solver");
    reject_unknown_keys(s, {"max_iterations", "tol_gap", "tol_feas"}, "solver");
    if (s.contains("max_iterations")) cfg.solver.max_iterations = s.at("max_iterations").get<int>();
    if (s.contains("tol_gap")) cfg.solver.tol_gap = require_number(s, "tol_gap", "solver.");
    if (s.contains("tol_feas")) cfg.solver.tol_feas = require_number(s, "tol_feas", "solver.");
    if (cfg.solver.max_iterations < 1)
      throw ValidationError("config.solver.max_iterations: must be >= 1");
  }

  if (!doc.contains("output") || doc.at("output").get<std::string>().empty())
    throw ValidationError("config.output: missing output directory");
  cfg.output = doc.at("output").get<std::string>();

  if (doc.contains("threads")) {
    cfg.threads = doc.at("threads").get<int>();
    if (cfg.threads < 0) throw ValidationError("config.threads: must be >= 0");
  }

  cfg.params = default_params(cfg.model);
  if (doc.contains("params")) {
    validate_params(cfg.model, doc.at("params"));
    cfg.params.update(doc.at("params"));
  }
  validate_params(cfg.model, cfg.params);

  if (doc.contains("curves")) {
    if (!doc.at("curves").is_array() || doc.at("curves").empty())
      throw ValidationError("config.curves: expected a nonempty array");
    std::set<std::string> labels;
    for (const auto& c : doc.at("curves")) {
      reject_unknown_keys(c, {"label", "params"}, "curves[]");
      CurveSpec spec;
      if (!c.contains("label")) throw ValidationError("config.curves[].label: missing");
      spec.label = c.at("label").get<std::string>();
      if (spec.label.empty() || !labels.insert(spec.label).second)
        throw ValidationError("config.curves[].label: labels must be nonempty and unique");
      for (char ch : spec.label)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '-' && ch != '.')
          throw ValidationError("config.curves[].label: '" + spec.label +
                                "' may only contain [A-Za-z0-9_.-]");
      if (c.contains("params")) {
        validate_params(cfg.model, c.at("params"));
        spec.param_overrides = c.at("params");
      } else {
        spec.param_overrides = json::object();
      }
      cfg.curves.push_back(std::move(spec));
    }
  } else {
    cfg.curves.push_back({"run", json::object()});
  }

  // Fully resolved copy for the manifest.
  json resolved;
  resolved["model"] = to_string(cfg.model);
  resolved["settings"] = cfg.settings;
  resolved["time"] = {{"start", cfg.time.start},
                      {"stop", cfg.time.stop},
                      {"points", cfg.time.points},
                      {"unit", to_string(cfg.time.unit)}};
  resolved["reduction"] = cfg.reduction;
  resolved["integrator"] = cfg.integrator;
  resolved["solver"] = {{"max_iterations", cfg.solver.max_iterations},
                        {"tol_gap", cfg.solver.tol_gap},
                        {"tol_feas", cfg.solver.tol_feas}};
  resolved["output"] = cfg.output;
  resolved["threads"] = cfg.threads;
  resolved["params"] = cfg.params;
  json curves = json::array();
  for (const auto& c : cfg.curves)
    curves.push_back({{"label", c.label}, {"params", c.param_overrides}});
  resolved["curves"] = std::move(curves);
  cfg.resolved = std::move(resolved);
  return cfg;
}

ExperimentConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config parse error: ") + e.what());
  }
  try {
    return parse_config(doc);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config_text(text);
}

}  // namespace tempsteer::runner
