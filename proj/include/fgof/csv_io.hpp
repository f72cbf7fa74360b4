#pragma once

#include <string>
#include <vector>

namespace fgof {

/// Rows of a numeric CSV file. Decimal point is always '.', whatever the
/// locale. Empty lines are skipped; with `header` the first line is dropped.
/// Throws IngestionError naming the 1-based row and column of a bad cell, or
/// the row whose width differs from the first.
std::vector<std::vector<double>> read_numeric_csv(const std::string& path, bool header);

/// A single column of reals, one per line (or a one-column CSV).
std::vector<double> read_numeric_column(const std::string& path, bool header);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

}  // namespace fgof
