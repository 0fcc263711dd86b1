#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pairlab {

/// Reals are always written with 17 significant digits.
std::string format_real(double value);

/// Minimal CSV writer: '#' comment lines, one header row, data rows.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void comment(std::string_view text);
  void header(std::initializer_list<std::string_view> columns);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);

  std::size_t rows() const noexcept { return rows_; }

 private:
  std::ostream& out_;
  std::size_t columns_ = 0;
  std::size_t rows_ = 0;
};

/// One table cell: blank, real, integer or text.
using Cell = std::variant<std::monostate, double, std::int64_t, std::uint64_t, std::string>;

std::string format_cell(const Cell& cell);

/// A report table that can be written as CSV (or converted to other
/// formats by callers) without re-deriving any value.
struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> cells);
};

void write_csv(std::ostream& out, const Table& table);

}  // namespace pairlab
