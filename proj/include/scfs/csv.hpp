#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "scfs/types.hpp"

namespace scfs::csv {

struct Table {
  std::vector<std::string> header;  // empty when the file had none
  MatrixXd values;
};

// Comma-separated numeric matrix, one sample per row. A header row is
// assumed iff the first row holds any non-numeric token. Throws ParseError
// with 1-based row/column on bad cells and IoError on unreadable files.
Table read_matrix(std::istream& in);
Table read_matrix(const std::string& path);

void write_matrix(std::ostream& out, const MatrixXd& values,
                  const std::vector<std::string>& header = {});
void write_matrix(const std::string& path, const MatrixXd& values,
                  const std::vector<std::string>& header = {});

// One 0-based integer per line; an optional non-numeric first line is
// skipped as a header.
LabelVector read_labels(const std::string& path);
void write_labels(const std::string& path, const LabelVector& labels);

IndexSet read_index_set(const std::string& path);
void write_index_set(const std::string& path, const IndexSet& indices);

// Shortest decimal text that round-trips the double.
std::string format_double(double v);

}  // namespace scfs::csv
