// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace tempsteer::qmat {

/// Ordered tensor factors of a Hilbert space, e.g.
/// {electron1:2, electron2:2, nucleus:2, ancillaS:2, ancillaT:2}.
/// The first factor is the slowest index (standard Kronecker ordering).
class SpaceLabel {
 public:
  SpaceLabel() = default;
  SpaceLabel(std::initializer_list<std::pair<std::string, int>> factors);

  void append(const std::string& name, int dim);

  int factor_count() const { return static_cast<int>(dims_.size()); }
  int dim() const;
  int factor_dim(int i) const { return dims_[i]; }
  const std::string& factor_name(int i) const { return names_[i]; }

  bool has(const std::string& name) const;
  /// Position of a named factor; throws ValidationError if unknown.
  int index_of(const std::string& name) const;

  /// Label of the kept factors, in their original order.
  SpaceLabel keep(const std::vector<std::string>& names) const;

  /// Row-major stride of factor i (product of the dims after it).
  int stride(int i) const;

 private:
  std::vector<std::string> names_;
  std::vector<int> dims_;
};

}  // namespace tempsteer::qmat
