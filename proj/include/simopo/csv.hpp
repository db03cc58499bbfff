// Copyright 2026 The simopo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace simopo {

/// Empty cell, number, or text.
using CsvCell = std::variant<std::monostate, double, long long, std::string>;
using CsvRow = std::vector<CsvCell>;

/// In-memory table written as UTF-8 CSV with LF line endings. Doubles use the
/// shortest decimal that round-trips.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<CsvRow>& rows() const { return rows_; }
  std::size_t column_index(const std::string& name) const;

  /// Throws std::invalid_argument on a width mismatch.
  void add_row(CsvRow row);
  void write(std::ostream& out) const;
  std::string str() const;

 private:
  std::vector<std::string> columns_;
  std::vector<CsvRow> rows_;
};

/// Shortest round-trip decimal of x; "nan", "inf", "-inf" for non-finite.
std::string format_double(double x);

}  // namespace simopo
