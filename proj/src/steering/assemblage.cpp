// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#include "steering/assemblage.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>

#include "common/error.hpp"
#include "common/parallel.hpp"

namespace tempsteer::steering {

using nlohmann::json;

Matrix Assemblage::total_state(int x) const {
  Matrix sum = Matrix::Zero(dim, dim);
  for (int a = 0; a < n_outcomes; ++a) sum += member(x, a);
  return sum;
}

double Assemblage::probability(int x, int a) const { return member(x, a).trace().real(); }

Assemblage::Consistency Assemblage::consistency() const {
  Consistency c;
  c.min_eigenvalue = 0.0;
  const Matrix ref = total_state(0);
  c.trace_defect = std::abs(ref.trace().real() - 1.0);
  for (int x = 1; x < n_settings; ++x)
    c.max_signaling = std::max(c.max_signaling, (total_state(x) - ref).norm());
  for (const auto& m : members)
    c.min_eigenvalue = std::min(c.min_eigenvalue, qmat::min_eigenvalue(m));
  return c;
}

void Assemblage::require_valid(double tol) const {
  if (members.size() != static_cast<size_t>(n_settings) * n_outcomes)
    throw ValidationError("assemblage member count does not match settings x outcomes");
  const Consistency c = consistency();
  if (c.max_signaling > tol)
    throw ValidationError("assemblage violates cross-setting consistency: " +
                          std::to_string(c.max_signaling));
  if (c.min_eigenvalue < -tol)
    throw ValidationError("assemblage member not PSD: min eigenvalue " +
                          std::to_string(c.min_eigenvalue));
  if (c.trace_defect > tol)
    throw ValidationError("assemblage total trace deviates from 1 by " +
                          std::to_string(c.trace_defect));
}

Assemblage initial_assemblage(const Matrix& rho0, const MeasurementSet& meas,
                              const SpaceLabel& label, const std::vector<std::string>& measured) {
  if (rho0.rows() != label.dim())
    throw ValidationError("initial state dimension does not match space label");

  // Measured factors must be contiguous; build I_pre (x) M (x) I_post.
  std::vector<int> positions;
  for (const auto& name : measured) positions.push_back(label.index_of(name));
  std::sort(positions.begin(), positions.end());
  for (size_t i = 1; i < positions.size(); ++i)
    if (positions[i] != positions[i - 1] + 1)
      throw ValidationError("measured subsystems must be contiguous in label order");

  int pre = 1, mid = 1, post = 1;
  for (int f = 0; f < label.factor_count(); ++f) {
    if (f < positions.front())
      pre *= label.factor_dim(f);
    else if (f <= positions.back())
      mid *= label.factor_dim(f);
    else
      post *= label.factor_dim(f);
  }
  if (mid != meas.dim())
    throw ValidationError("measurement dimension " + std::to_string(meas.dim()) +
                          " does not match measured subsystem dimension " + std::to_string(mid));

  Assemblage out;
  out.dim = label.dim();
  out.n_settings = meas.n_settings;
  out.n_outcomes = meas.n_outcomes;
  for (int x = 0; x < meas.n_settings; ++x)
    for (int a = 0; a < meas.n_outcomes; ++a) {
      const Matrix full = qmat::kron(qmat::kron(qmat::identity(pre), meas.op(x, a)),
                                     qmat::identity(post));
      out.members.push_back(full * rho0 * full.adjoint());
    }
  return out;
}

std::vector<Assemblage> evolve_assemblage(const Assemblage& asm0, const Liouvillian& l,
                                          const std::vector<double>& times,
                                          const std::optional<ReductionSpec>& spec,
                                          const dynamics::IntegratorOptions& opts, int threads) {
  if (asm0.dim != l.dim())
    throw ValidationError("assemblage members do not live on the Liouvillian's space");

  const int n_members = static_cast<int>(asm0.members.size());
  std::vector<std::vector<Matrix>> trajectories(n_members);
  parallel_for(
      n_members,
      [&](int i) { trajectories[i] = dynamics::propagate(l, asm0.members[i], times, opts); },
      threads);

  const SpaceLabel reduced_label =
      spec.has_value() ? l.space().keep(spec->keep) : l.space();

  std::vector<Assemblage> out(times.size());
  for (size_t k = 0; k < times.size(); ++k) {
    Assemblage slice;
    slice.dim = reduced_label.dim();
    slice.n_settings = asm0.n_settings;
    slice.n_outcomes = asm0.n_outcomes;
    slice.members.resize(asm0.members.size());

    if (!spec.has_value()) {
      for (int i = 0; i < n_members; ++i) slice.members[i] = trajectories[i][k];
    } else if (spec->mode == ReductionSpec::Mode::TraceOut) {
      for (int i = 0; i < n_members; ++i)
        slice.members[i] = qmat::partial_trace(trajectories[i][k], l.space(), spec->keep);
    } else {
      // Project each member, then renormalize the whole slice by the common
      // survival weight so consistency and unit trace are preserved.
      if (!spec->projector.has_value())
        throw ValidationError("project-and-renormalize requires a projector");
      const Matrix& p = *spec->projector;
      double weight = 0.0;
      std::vector<Matrix> projected(n_members);
      for (int i = 0; i < n_members; ++i) projected[i] = p * trajectories[i][k] * p;
      for (int a = 0; a < asm0.n_outcomes; ++a)
        weight += projected[a].trace().real();  // setting x = 0 row
      if (weight < 1e-12)
        throw NumericalError("projected weight below 1e-12; population fully decayed");
      for (int i = 0; i < n_members; ++i)
        slice.members[i] = qmat::partial_trace(projected[i] / weight, l.space(), spec->keep);
    }
    out[k] = std::move(slice);
  }
  return out;
}

Assemblage depolarize(const Assemblage& a, double strength) {
  if (strength < 0.0 || strength > 1.0)
    throw ValidationError("depolarizing strength must lie in [0, 1]");
  const Matrix id = qmat::identity(a.dim);
  return map_members(a, [&](const Matrix& m) {
    return Matrix((1.0 - strength) * m + (strength * m.trace().real() / a.dim) * id);
  });
}

Assemblage map_members(const Assemblage& a, const std::function<Matrix(const Matrix&)>& fn) {
  Assemblage out = a;
  for (auto& m : out.members) m = fn(m);
  if (!out.members.empty()) out.dim = static_cast<int>(out.members[0].rows());
  return out;
}

DeterministicStrategySet::DeterministicStrategySet(int n_settings, int n_outcomes)
    : n_settings_(n_settings), n_outcomes_(n_outcomes) {
  if (n_settings < 1 || n_outcomes < 1)
    throw ValidationError("strategy enumeration needs at least one setting and outcome");
  const double total = std::pow(static_cast<double>(n_outcomes), n_settings);
  if (total > 1e6)
    throw ValidationError("strategy count n_a^n_x exceeds the 1e6 guard");
  const int count = static_cast<int>(std::llround(total));
  outcomes_.resize(count);
  for (int lambda = 0; lambda < count; ++lambda) {
    outcomes_[lambda].resize(n_settings);
    int rem = lambda;
    for (int x = n_settings - 1; x >= 0; --x) {
      outcomes_[lambda][x] = static_cast<std::uint8_t>(rem % n_outcomes);
      rem /= n_outcomes;
    }
  }
}

DeterministicStrategySet enumerate_strategies(int n_settings, int n_outcomes) {
  return DeterministicStrategySet(n_settings, n_outcomes);
}

std::string assemblage_to_json(const Assemblage& a) {
  json doc;
  doc["format"] = "tempsteer-assemblage";
  doc["version"] = 1;
  doc["dimension"] = a.dim;
  doc["n_settings"] = a.n_settings;
  doc["n_outcomes"] = a.n_outcomes;
  json members = json::array();
  for (int x = 0; x < a.n_settings; ++x)
    for (int out = 0; out < a.n_outcomes; ++out) {
      json entry;
      entry["setting"] = x + 1;
      entry["outcome"] = out + 1;
      json data = json::array();
      const Matrix& m = a.member(x, out);
      for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j)
          data.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
      entry["matrix"] = std::move(data);
      members.push_back(std::move(entry));
    }
  doc["members"] = std::move(members);
  return doc.dump(2);
}

Assemblage assemblage_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("assemblage parse error: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != "tempsteer-assemblage")
      throw ValidationError("not a tempsteer-assemblage file");
    Assemblage a;
    a.dim = doc.at("dimension").get<int>();
    a.n_settings = doc.at("n_settings").get<int>();
    a.n_outcomes = doc.at("n_outcomes").get<int>();
    if (a.dim < 1 || a.n_settings < 1 || a.n_outcomes < 1)
      throw ValidationError("assemblage header fields must be positive");
    a.members.assign(static_cast<size_t>(a.n_settings) * a.n_outcomes,
                     Matrix::Zero(a.dim, a.dim));
    std::vector<bool> seen(a.members.size(), false);
    for (const auto& entry : doc.at("members")) {
      const int x = entry.at("setting").get<int>() - 1;
      const int out = entry.at("outcome").get<int>() - 1;
      if (x < 0 || x >= a.n_settings || out < 0 || out >= a.n_outcomes)
        throw ValidationError("member setting/outcome out of range");
      const auto& data = entry.at("matrix");
      if (static_cast<int>(data.size()) != a.dim * a.dim)
        throw ValidationError("member matrix has wrong size");
      Matrix m(a.dim, a.dim);
      int idx = 0;
      for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j, ++idx)
          m(i, j) = Complex(data[idx][0].get<double>(), data[idx][1].get<double>());
      a.member(x, out) = m;
      seen[x * a.n_outcomes + out] = true;
    }
    for (bool s : seen)
      if (!s) throw ValidationError("assemblage is missing members");
    return a;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed assemblage file: ") + e.what());
  }
}

void save_assemblage(const Assemblage& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << assemblage_to_json(a) << '\n';
}

Assemblage load_assemblage(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return assemblage_from_json(text);
}

}  // namespace tempsteer::steering
