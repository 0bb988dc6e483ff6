#include "qsmooth/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

namespace qsmooth {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(field);
      field.clear();
    } else {
      field.push_back(ch);
    }
  }
  fields.push_back(field);
  return fields;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_cell(const std::string& raw, int row, const std::string& column) {
  const std::string cell = trim(raw);
  if (cell.empty()) {
    throw CsvError("missing value", row, column);
  }
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw CsvError("cannot parse '" + cell + "' as a finite number", row,
                   column);
  }
  return value;
}

}  // namespace

CsvError::CsvError(std::string message, int row, std::string column)
    : std::runtime_error("row " + std::to_string(row) + ", column '" + column +
                         "': " + message),
      row_(row),
      column_(std::move(column)) {}

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

PairedSample read_xy_csv(const std::string& path, const std::string& x_col,
                         const std::string& y_col) {
  std::ifstream in(path);
  if (!in) {
    throw std::ios_base::failure("cannot open '" + path + "'");
  }

  std::string line;
  if (!std::getline(in, line)) {
    throw CsvError("empty file, expected a header row", 1, x_col);
  }
  const std::vector<std::string> header = split_fields(line);
  int x_idx = -1, y_idx = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string name = trim(header[i]);
    if (name == x_col) x_idx = static_cast<int>(i);
    if (name == y_col) y_idx = static_cast<int>(i);
  }
  if (x_idx < 0) {
    throw CsvError("header does not name this column", 1, x_col);
  }
  if (y_idx < 0 || y_idx == x_idx) {
    throw CsvError("header does not name this column", 1, y_col);
  }

  std::vector<double> xs, ys;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw CsvError("expected " + std::to_string(header.size()) +
                         " fields, found " + std::to_string(fields.size()),
                     row, x_col);
    }
    xs.push_back(parse_cell(fields[static_cast<std::size_t>(x_idx)], row, x_col));
    ys.push_back(parse_cell(fields[static_cast<std::size_t>(y_idx)], row, y_col));
  }

  PairedSample sample;
  sample.x = Eigen::Map<const Eigen::VectorXd>(xs.data(),
                                               static_cast<Eigen::Index>(xs.size()));
  sample.y = Eigen::Map<const Eigen::VectorXd>(ys.data(),
                                               static_cast<Eigen::Index>(ys.size()));
  return sample;
}

void write_xy_csv(const std::string& path,
                  const Eigen::Ref<const Eigen::VectorXd>& xs,
                  const Eigen::Ref<const Eigen::VectorXd>& ys,
                  const std::string& x_name, const std::string& y_name) {
  std::ostringstream body;
  body << x_name << ',' << y_name << '\n';
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    body << format_double(xs[i]) << ',' << format_double(ys[i]) << '\n';
  }

  std::ofstream out(path);
  if (!out) {
    throw std::ios_base::failure("cannot open '" + path + "' for writing");
  }
  out << body.str();
  out.flush();
  if (!out) {
    throw std::ios_base::failure("write failed for '" + path + "'");
  }
}

}  // namespace qsmooth
