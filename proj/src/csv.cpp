#include "scfs/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "scfs/error.hpp"

namespace scfs::csv {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

template <typename Int>
std::vector<Int> read_integers(const std::string& path) {
  auto in = open_in(path);
  std::vector<Int> values;
  std::string line;
  long row = 0;
  while (std::getline(in, line)) {
    ++row;
    const auto t = trim(line);
    if (t.empty()) continue;
    Int v{};
    if (!parse_int(t, v)) {
      if (row == 1) continue;  // header
      throw ParseError(path + ": row " + std::to_string(row) +
                           ": not an integer: '" + std::string(t) + "'",
                       row, 1);
    }
    values.push_back(v);
  }
  return values;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

Table read_matrix(std::istream& in) {
  Table table;
  std::vector<double> data;
  std::size_t width = 0;
  long row = 0;
  std::size_t data_rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (row == 1) {
      bool numeric = true;
      double tmp;
      for (auto c : cells) numeric = numeric && parse_double(c, tmp);
      if (!numeric) {
        for (auto c : cells) table.header.emplace_back(c);
        width = cells.size();
        continue;
      }
    }
    if (width == 0) width = cells.size();
    if (cells.size() != width)
      throw ParseError("row " + std::to_string(row) + ": expected " +
                           std::to_string(width) + " columns, found " +
                           std::to_string(cells.size()),
                       row, static_cast<long>(cells.size()));
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double v;
      if (!parse_double(cells[c], v))
        throw ParseError("row " + std::to_string(row) + ", column " +
                             std::to_string(c + 1) + ": not a number: '" +
                             std::string(cells[c]) + "'",
                         row, static_cast<long>(c + 1));
      data.push_back(v);
    }
    ++data_rows;
  }
  if (data_rows == 0) throw ParseError("no data rows", row, 0);
  table.values.resize(static_cast<Eigen::Index>(data_rows),
                      static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < data_rows; ++r)
    for (std::size_t c = 0; c < width; ++c)
      table.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          data[r * width + c];
  return table;
}

Table read_matrix(const std::string& path) {
  auto in = open_in(path);
  try {
    return read_matrix(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.row(), e.col());
  }
}

void write_matrix(std::ostream& out, const MatrixXd& values,
                  const std::vector<std::string>& header) {
  for (std::size_t c = 0; c < header.size(); ++c)
    out << (c ? "," : "") << header[c];
  if (!header.empty()) out << '\n';
  std::string line;
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    line.clear();
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      if (c) line += ',';
      line += format_double(values(r, c));
    }
    line += '\n';
    out << line;
  }
}

void write_matrix(const std::string& path, const MatrixXd& values,
                  const std::vector<std::string>& header) {
  auto out = open_out(path);
  write_matrix(out, values, header);
  if (!out) throw IoError("write to '" + path + "' failed");
}

LabelVector read_labels(const std::string& path) {
  return read_integers<int>(path);
}

void write_labels(const std::string& path, const LabelVector& labels) {
  auto out = open_out(path);
  for (int l : labels) out << l << '\n';
  if (!out) throw IoError("write to '" + path + "' failed");
}

IndexSet read_index_set(const std::string& path) {
  return read_integers<Eigen::Index>(path);
}

void write_index_set(const std::string& path, const IndexSet& indices) {
  auto out = open_out(path);
  for (auto i : indices) out << i << '\n';
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace scfs::csv
