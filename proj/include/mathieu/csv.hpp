#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mathieu::csv {

/// 17 significant digits, so values round-trip exactly.
std::string num(double x);

/// One RFC-4180 row; cells containing , " or newlines are quoted.
void write_row(std::ostream& os, const std::vector<std::string>& cells);

/// Parses RFC-4180 text (quoted cells, doubled quotes).  Throws ConfigError
/// on an unterminated quote.
std::vector<std::vector<std::string>> read(std::istream& is);

/// Strict double parse of a whole cell.
double to_double(const std::string& cell);

}  // namespace mathieu::csv
