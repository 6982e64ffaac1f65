// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace tempsteer {

// Bad inputs: shape mismatches, unknown subsystem names, malformed configs.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// The computation itself failed: integrator underflow, solver breakdown,
// fully decayed postselection.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tempsteer
