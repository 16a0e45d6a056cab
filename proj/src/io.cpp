#include "teachset/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace teachset {

namespace {

std::vector<std::string> split(const std::string& line, char delimiter) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == delimiter) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& cell, double& out) {
  const std::string t = trim(cell);
  if (t.empty()) return false;
  const char* begin = t.c_str();
  char* end = nullptr;
  errno = 0;
  out = std::strtod(begin, &end);
  return end == begin + t.size() && errno == 0;
}

int integral_label(double v, std::size_t row, std::size_t col) {
  const double r = std::round(v);
  if (std::abs(v - r) > 0.0 || std::abs(r) > 2147483647.0)
    throw ParseError(row, col, "label must be an integer, got " + std::to_string(v));
  return static_cast<int>(r);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

RawTable parse_csv(const std::string& path, const CsvOptions& options) {
  const std::vector<std::string> lines = read_lines(path);

  RawTable table;
  table.label_column = options.label_column;

  std::size_t first_data = 0;
  if (!lines.empty()) {
    const auto cells = split(lines[0], options.delimiter);
    bool looks_like_header = false;
    if (options.header.has_value()) {
      looks_like_header = *options.header;
    } else {
      for (const auto& c : cells) {
        double v;
        if (!parse_double(c, v)) {
          looks_like_header = true;
          break;
        }
      }
    }
    if (looks_like_header) {
      for (const auto& c : cells) table.header.push_back(trim(c));
      first_data = 1;
    }
  }

  std::size_t width = 0;
  std::vector<int> labels;
  for (std::size_t li = first_data; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    const auto cells = split(lines[li], options.delimiter);
    const std::size_t row_no = table.rows.size();
    if (width == 0) {
      width = cells.size();
      if (options.label_column &&
          (*options.label_column < 0 || static_cast<std::size_t>(*options.label_column) >= width))
        throw BadConfig("label_column " + std::to_string(*options.label_column) +
                        " out of range for " + std::to_string(width) + " columns");
    } else if (cells.size() != width) {
      throw ParseError(row_no, cells.size(),
                       "expected " + std::to_string(width) + " cells, got " +
                           std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(width);
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
      double v;
      if (!parse_double(cells[ci], v)) throw NonNumericCell(row_no, ci, "cell '" + cells[ci] + "'");
      if (options.label_column && static_cast<std::size_t>(*options.label_column) == ci)
        labels.push_back(integral_label(v, row_no, ci));
      else
        row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (options.label_column) table.labels = std::move(labels);
  return table;
}

RawTable parse_libsvm(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);

  struct SparseRow {
    int label = 0;
    std::vector<std::pair<std::size_t, double>> entries;
  };
  std::vector<SparseRow> sparse;
  std::size_t max_index = 0;

  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string line = trim(lines[li]);
    if (line.empty()) continue;
    const std::size_t line_no = li + 1;
    std::istringstream ss(line);
    std::string token;
    if (!(ss >> token)) throw MalformedLine(line_no, "missing label");

    SparseRow row;
    double label_value;
    if (!parse_double(token, label_value)) throw MalformedLine(line_no, "bad label '" + token + "'");
    const double rounded = std::round(label_value);
    if (std::abs(label_value - rounded) > 0.0)
      throw MalformedLine(line_no, "label must be an integer, got '" + token + "'");
    row.label = static_cast<int>(rounded);

    while (ss >> token) {
      const std::size_t colon = token.find(':');
      if (colon == std::string::npos)
        throw MalformedLine(line_no, "expected idx:val, got '" + token + "'");
      double idx_value, value;
      if (!parse_double(token.substr(0, colon), idx_value) ||
          idx_value != std::floor(idx_value))
        throw MalformedLine(line_no, "bad feature index in '" + token + "'");
      if (idx_value < 1.0)
        throw MalformedLine(line_no, "feature indices are 1-based, got '" + token + "'");
      if (idx_value > 1e6)
        throw MalformedLine(line_no, "feature index " + token +
                                         " exceeds the 1e6 densification limit");
      if (!parse_double(token.substr(colon + 1), value))
        throw MalformedLine(line_no, "bad feature value in '" + token + "'");
      const std::size_t idx = static_cast<std::size_t>(idx_value);
      max_index = std::max(max_index, idx);
      row.entries.emplace_back(idx - 1, value);
    }
    sparse.push_back(std::move(row));
  }

  RawTable table;
  std::vector<int> labels;
  labels.reserve(sparse.size());
  for (const auto& row : sparse) {
    std::vector<double> dense(max_index, 0.0);
    for (const auto& [j, v] : row.entries) dense[j] = v;
    table.rows.push_back(std::move(dense));
    labels.push_back(row.label);
  }
  table.labels = std::move(labels);
  return table;
}

RawTable parse_table(const std::string& path, const std::string& format,
                     const CsvOptions& options) {
  if (format == "csv") return parse_csv(path, options);
  if (format == "libsvm") return parse_libsvm(path);
  throw BadConfig("unknown input format: " + format);
}

BallDataset to_ball_dataset(const RawTable& table, double target_max_norm, bool center) {
  BallDataset ds = project_to_ball(table.rows, target_max_norm, center);
  if (table.labels) {
    if (table.labels->size() != table.rows.size())
      throw LengthMismatch("labels length does not match row count");
    ds.labels = table.labels;
  }
  return ds;
}

}  // namespace teachset
