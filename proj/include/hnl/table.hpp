// Copyright 2026 The hn-lindblad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Column-typed result tables with deterministic text output. Doubles use the
// shortest round-trip representation, so equal values always print equally.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace hnl {

using Cell = std::variant<std::int64_t, double, bool, std::string>;

[[nodiscard]] std::string format_double(double x);
[[nodiscard]] std::string format_cell(const Cell& c);

class Table {
 public:
  Table() = default;
  Table(std::string name, std::vector<std::string> columns);

  void add_row(std::vector<Cell> row);

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] const std::vector<std::string>& columns() const noexcept { return columns_; }
  [[nodiscard]] const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t size() const noexcept { return rows_.size(); }

  [[nodiscard]] std::size_t column_index(const std::string& column) const;
  [[nodiscard]] double number(std::size_t row, const std::string& column) const;

  /// Header line plus rows; no metadata.
  void write_csv_body(std::ostream& os) const;
  [[nodiscard]] nlohmann::json to_json() const;

 private:
  std::string name_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// Metadata line `# {json}`, a `# generated_at:` line, then each table as a
/// `# table: name` section. Only the generated_at line varies between runs.
void write_csv_document(std::ostream& os, const nlohmann::json& metadata,
                        const std::vector<Table>& tables, const std::string& generated_at);

[[nodiscard]] nlohmann::json json_document(const nlohmann::json& metadata,
                                           const std::vector<Table>& tables,
                                           const std::string& generated_at);

/// UTC timestamp, ISO 8601.
[[nodiscard]] std::string utc_timestamp();

}  // namespace hnl
