#include "fgof/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fgof/error.hpp"

namespace fgof {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\"");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\"");
  return std::string(s.substr(first, last - first + 1));
}

double parse_cell(const std::string& text, const std::string& path, std::size_t row,
                  std::size_t col) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << path << ": non-numeric cell '" << text << "' at row " << row << ", column " << col;
    throw IngestionError(msg.str());
  }
  return value;
}

}  // namespace

std::vector<std::vector<double>> read_numeric_csv(const std::string& path, bool header) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool skipped_header = !header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
      line.erase(0, 3);
    }
    if (trim(line).empty()) continue;
    if (!skipped_header) {
      skipped_header = true;
      continue;
    }
    std::vector<double> row;
    std::size_t col = 0;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      const std::string cell =
          trim(std::string_view(line).substr(start, comma == std::string::npos
                                                        ? std::string::npos
                                                        : comma - start));
      row.push_back(parse_cell(cell, path, line_no, ++col));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      std::ostringstream msg;
      msg << path << ": row " << line_no << " has " << row.size() << " columns, expected "
          << rows.front().size();
      throw IngestionError(msg.str());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IngestionError(path + ": no data rows");
  return rows;
}

std::vector<double> read_numeric_column(const std::string& path, bool header) {
  const auto rows = read_numeric_csv(path, header);
  if (rows.front().size() != 1) {
    std::ostringstream msg;
    msg << path << ": expected a single column, found " << rows.front().size();
    throw IngestionError(msg.str());
  }
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.front());
  return out;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace fgof
