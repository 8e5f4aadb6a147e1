#pragma once

// CSV ingestion for the command-line tool.
//
// Comma-separated, '.' decimal point, no quoting. A first row in which no
// cell parses as a number is taken as a header.

#include <istream>
#include <string>
#include <vector>

#include "orthores/dense_matrix.hpp"
#include "orthores/errors.hpp"

namespace orthores::cli {

// Bad or unusable input file (maps to exit code 2).
class InputError : public orthores::Error {
 public:
  using Error::Error;
};

struct Dataset {
  std::string source;
  std::vector<std::string> header;  // empty when the file has none
  std::vector<Vector> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  std::size_t cols() const { return columns.size(); }
};

Dataset parse_csv(std::istream& in, const std::string& source);
Dataset read_csv(const std::string& path);

/// Columns [first, first + count) as an n x count matrix.
DenseMatrix column_block(const Dataset& ds, std::size_t first, std::size_t count);

}  // namespace orthores::cli
