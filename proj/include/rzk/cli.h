// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace rzk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBoundViolation = 2;
inline constexpr int kExitInputError = 3;

/// A report: fixed columns, one JSON value per cell.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
};

/// Header row, then one line per row. Strings are quoted only when needed,
/// doubles use %.17g, arrays and objects are written as quoted JSON.
void write_csv(const Table& t, std::ostream& out);
/// An array of objects keyed by column name.
void write_json(const Table& t, std::ostream& out);

/// Parses arguments (without the program name), runs the subcommand and
/// writes the report to --out or `out`. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rzk::cli
