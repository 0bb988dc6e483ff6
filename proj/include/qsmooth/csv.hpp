#pragma once

#include <stdexcept>
#include <string>

#include "qsmooth/dataset.hpp"

namespace qsmooth {

/// CSV parse failure with the 1-based file row and offending column name.
class CsvError : public std::runtime_error {
public:
  CsvError(std::string message, int row, std::string column);

  int row() const { return row_; }
  const std::string& column() const { return column_; }

private:
  int row_;
  std::string column_;
};

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

/// Read a two-column sample from a UTF-8, comma-separated file with a header
/// row. x_col/y_col name the columns to use; other columns are ignored.
/// Missing or non-numeric cells raise CsvError. Throws std::ios_base::failure
/// when the file cannot be opened.
PairedSample read_xy_csv(const std::string& path,
                         const std::string& x_col = "x",
                         const std::string& y_col = "y");

/// Write header `x,y` (or the given names) and one row per point, in the
/// given order, at full round-trip precision.
void write_xy_csv(const std::string& path,
                  const Eigen::Ref<const Eigen::VectorXd>& xs,
                  const Eigen::Ref<const Eigen::VectorXd>& ys,
                  const std::string& x_name = "x",
                  const std::string& y_name = "y");

}  // namespace qsmooth
