#include "cli/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <string_view>

namespace orthores::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::optional<double> parse_number(std::string_view cell) {
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace

Dataset parse_csv(std::istream& in, const std::string& source) {
  Dataset ds;
  ds.source = source;
  std::string line;
  std::size_t line_no = 0;
  bool first_row = true;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);

    if (first_row) {
      first_row = false;
      bool any_numeric = false;
      for (auto c : cells) any_numeric = any_numeric || parse_number(c).has_value();
      ds.columns.resize(cells.size());
      if (!any_numeric) {
        for (auto c : cells) ds.header.emplace_back(c);
        continue;
      }
    }

    if (cells.size() != ds.columns.size()) {
      throw InputError(source + ": row " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                       " columns, expected " + std::to_string(ds.columns.size()));
    }
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const auto value = parse_number(cells[j]);
      if (!value) {
        throw InputError(source + ": row " + std::to_string(line_no) + ", column " + std::to_string(j + 1) +
                         ": cannot parse '" + std::string(cells[j]) + "' as a number");
      }
      ds.columns[j].push_back(*value);
    }
  }

  if (ds.rows() == 0) throw InputError(source + ": no data rows");
  return ds;
}

Dataset read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return parse_csv(in, path);
}

DenseMatrix column_block(const Dataset& ds, std::size_t first, std::size_t count) {
  if (count == 0 || first + count > ds.cols()) throw InputError("column range out of bounds");
  DenseMatrix X(ds.rows(), count);
  for (std::size_t j = 0; j < count; ++j)
    for (std::size_t i = 0; i < ds.rows(); ++i) X(i, j) = ds.columns[first + j][i];
  return X;
}

}  // namespace orthores::cli
