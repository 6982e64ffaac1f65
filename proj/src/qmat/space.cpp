// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#include "qmat/space.hpp"

#include "common/error.hpp"

namespace tempsteer::qmat {

SpaceLabel::SpaceLabel(std::initializer_list<std::pair<std::string, int>> factors) {
  for (const auto& [name, dim] : factors) append(name, dim);
}

void SpaceLabel::append(const std::string& name, int dim) {
  if (dim < 1) throw ValidationError("subsystem '" + name + "' has nonpositive dimension");
  if (has(name)) throw ValidationError("duplicate subsystem name '" + name + "'");
  names_.push_back(name);
  dims_.push_back(dim);
}

int SpaceLabel::dim() const {
  int d = 1;
  for (int n : dims_) d *= n;
  return d;
}

bool SpaceLabel::has(const std::string& name) const {
  for (const auto& n : names_)
    if (n == name) return true;
  return false;
}

int SpaceLabel::index_of(const std::string& name) const {
  for (int i = 0; i < factor_count(); ++i)
    if (names_[i] == name) return i;
  throw ValidationError("unknown subsystem name '" + name + "'");
}

SpaceLabel SpaceLabel::keep(const std::vector<std::string>& names) const {
  for (const auto& n : names) index_of(n);  // validate
  SpaceLabel out;
  for (int i = 0; i < factor_count(); ++i) {
    for (const auto& n : names) {
      if (names_[i] == n) {
        out.append(names_[i], dims_[i]);
        break;
      }
    }
  }
  return out;
}

int SpaceLabel::stride(int i) const {
  int s = 1;
  for (int k = i + 1; k < factor_count(); ++k) s *= dims_[k];
  return s;
}

}  // namespace tempsteer::qmat
