#include "mathieu/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

#include "mathieu/errors.hpp"

namespace mathieu::csv {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    const std::string& c = cells[i];
    if (c.find_first_of(",\"\r\n") == std::string::npos) {
      os << c;
      continue;
    }
    os << '"';
    for (char ch : c) {
      if (ch == '"') os << '"';
      os << ch;
    }
    os << '"';
  }
  os << '\n';
}

std::vector<std::vector<std::string>> read(std::istream& is) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false, any = false;
  char ch;
  while (is.get(ch)) {
    any = true;
    if (quoted) {
      if (ch == '"') {
        if (is.peek() == '"') {
          is.get();
          cell += '"';
        } else {
          quoted = false;
        }
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      row.push_back(std::move(cell));
      cell.clear();
    } else if (ch == '\n') {
      row.push_back(std::move(cell));
      cell.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else if (ch != '\r') {
      cell += ch;
    }
  }
  if (quoted) throw ConfigError("csv: unterminated quoted cell");
  if (any) {
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

double to_double(const std::string& cell) {
  // strtod rather than from_chars: it accepts inf/nan spellings that %g emits
  const char* b = cell.c_str();
  char* end = nullptr;
  const double v = std::strtod(b, &end);
  if (cell.empty() || end != b + cell.size()) throw ConfigError("csv: not a number: '" + cell + "'");
  return v;
}

}  // namespace mathieu::csv
