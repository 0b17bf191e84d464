#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace fnlse::cli {

enum class Format { Human, Csv, JsonLines };

/// Parses "human", "csv" or "jsonl"; throws InvalidArgument otherwise.
Format parse_format(const std::string& text);

using Cell = std::variant<std::string, double, std::int64_t, bool>;

class OutputTable {
 public:
  explicit OutputTable(std::vector<std::string> columns);

  /// Throws IndexError if the row width differs from the column count.
  void add_row(std::vector<Cell> row);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }

  /// Human: aligned columns, reals to 3 decimals. Csv: header row, shortest
  /// round-trip reals. JsonLines: one object per row.
  void render(std::ostream& out, Format format) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// Shortest representation that parses back to the same double.
std::string full_precision(double v);

}  // namespace fnlse::cli
