#include "pairlab/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace pairlab {

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

void CsvWriter::comment(std::string_view text) { out_ << "# " << text << '\n'; }

void CsvWriter::header(std::initializer_list<std::string_view> columns) {
  std::vector<std::string> cols;
  for (const auto c : columns) cols.emplace_back(c);
  header(cols);
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  columns_ = columns.size();
  row(columns);
  rows_ = 0;
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (columns_ != 0 && cells.size() != columns_) throw std::logic_error("csv row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i != 0) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
  ++rows_;
}

std::string format_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

void Table::add_row(std::vector<Cell> cells) {
  if (cells.size() != columns.size()) throw std::logic_error("table row width does not match columns");
  rows.push_back(std::move(cells));
}

void write_csv(std::ostream& out, const Table& table) {
  CsvWriter csv(out);
  for (const auto& c : table.comments) csv.comment(c);
  csv.header(table.columns);
  for (const auto& row : table.rows) {
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (const auto& cell : row) cells.push_back(format_cell(cell));
    csv.row(cells);
  }
}

}  // namespace pairlab
