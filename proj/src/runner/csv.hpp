// Copyright 2026 The tempsteer authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace tempsteer::runner {

/// Shortest representation that round-trips exactly; locale independent.
std::string format_double(double v);

/// RFC-4180-style quoting: fields containing commas, quotes or newlines are
/// quoted with embedded quotes doubled.
std::string csv_escape(const std::string& field);

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  void row(const std::vector<std::string>& fields);
  void close();

 private:
  std::ofstream out_;
};

}  // namespace tempsteer::runner
