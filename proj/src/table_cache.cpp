#include "mathieu/table_cache.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>

#include "mathieu/csv.hpp"
#include "mathieu/diagnostics.hpp"
#include "mathieu/errors.hpp"

namespace mathieu {

std::string table_cache_dir() {
  const char* e = std::getenv("MATHIEU_TABLE_CACHE");
  return e ? e : "";
}

void save_table(const CoefficientTable& t, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("table cache: cannot write " + path);
  using csv::num;
  csv::write_row(os, {"kind", "n", "p", "value"});
  csv::write_row(os, {"theta", "0", "0", num(t.theta)});
  csv::write_row(os, {"n_max", "0", "0", std::to_string(t.n_max)});
  csv::write_row(os, {"p_max", "0", "0", std::to_string(t.p_max)});
  csv::write_row(os, {"drift", "0", "0", num(t.truncation_drift)});
  for (int n = 0; n <= t.n_max; ++n) {
    const std::string ns = std::to_string(n);
    csv::write_row(os, {"a", ns, "0", num(t.char_even[n])});
    if (n > 0) csv::write_row(os, {"b", ns, "0", num(t.char_odd[n])});
    for (int p = 0; p <= t.p_max; ++p) {
      if (t.coeff_even[n][p] != 0.0) csv::write_row(os, {"A", ns, std::to_string(p), num(t.coeff_even[n][p])});
      if (n > 0 && t.coeff_odd[n][p] != 0.0)
        csv::write_row(os, {"B", ns, std::to_string(p), num(t.coeff_odd[n][p])});
    }
  }
  if (!os) throw ConfigError("table cache: write failed for " + path);
}

CoefficientTable load_table(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("table cache: cannot read " + path);
  const auto rows = csv::read(is);
  if (rows.empty() || rows[0] != std::vector<std::string>{"kind", "n", "p", "value"})
    throw ConfigError("table cache: bad header in " + path);
  CoefficientTable t;
  t.n_max = t.p_max = -1;
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 4) throw ConfigError("table cache: malformed row " + std::to_string(i) + " in " + path);
    const std::string& k = r[0];
    const double v = csv::to_double(r[3]);
    if (k == "theta") {
      t.theta = v;
    } else if (k == "n_max" || k == "p_max") {
      (k == "n_max" ? t.n_max : t.p_max) = static_cast<int>(v);
      if (t.n_max >= 0 && t.p_max >= 0 && t.char_even.empty()) {
        t.char_even.assign(t.n_max + 1, 0.0);
        t.char_odd.assign(t.n_max + 1, std::numeric_limits<double>::quiet_NaN());
        t.coeff_even.assign(t.n_max + 1, std::vector<double>(t.p_max + 1, 0.0));
        t.coeff_odd.assign(t.n_max + 1, std::vector<double>(t.p_max + 1, 0.0));
      }
    } else if (k == "drift") {
      t.truncation_drift = v;
    } else {
      if (t.char_even.empty()) throw ConfigError("table cache: data before sizes in " + path);
      const int n = static_cast<int>(csv::to_double(r[1]));
      const int p = static_cast<int>(csv::to_double(r[2]));
      if (n < 0 || n > t.n_max || p < 0 || p > t.p_max)
        throw ConfigError("table cache: index out of range in " + path);
      if (k == "a") t.char_even[n] = v;
      else if (k == "b") t.char_odd[n] = v;
      else if (k == "A") t.coeff_even[n][p] = v;
      else if (k == "B") t.coeff_odd[n][p] = v;
      else throw ConfigError("table cache: unknown row kind '" + k + "' in " + path);
    }
  }
  if (t.char_even.empty()) throw ConfigError("table cache: missing sizes in " + path);
  return t;
}

CoefficientTable cached_tables(double theta, int n_max, int p_max, const std::string& dir) {
  if (dir.empty()) return build_tables(theta, n_max, p_max);
  namespace fs = std::filesystem;
  char key[96];
  // hex float keeps theta exact in the file name
  std::snprintf(key, sizeof key, "table_%a_%d_%d.csv", theta, n_max, p_max);
  const fs::path path = fs::path(dir) / key;
  if (fs::exists(path)) {
    try {
      CoefficientTable t = load_table(path.string());
      if (t.theta == theta && t.n_max == n_max && t.p_max == p_max) return t;
      diag::warn("table cache: " + path.string() + " does not match the request; rebuilding");
    } catch (const ConfigError& e) {
      diag::warn(std::string(e.what()) + "; rebuilding");
    }
  }
  CoefficientTable t = build_tables(theta, n_max, p_max);
  std::error_code ec;
  fs::create_directories(dir, ec);
  try {
    save_table(t, path.string());
  } catch (const ConfigError& e) {
    diag::warn(e.what());
  }
  return t;
}

}  // namespace mathieu
