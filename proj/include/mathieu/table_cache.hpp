#pragma once

#include <string>

#include "mathieu/angular_basis.hpp"

namespace mathieu {

/// Value of MATHIEU_TABLE_CACHE, or "" when unset.
std::string table_cache_dir();

/// CSV with header kind,n,p,value; values at 17 digits so a reload is exact.
void save_table(const CoefficientTable& table, const std::string& path);
CoefficientTable load_table(const std::string& path);

/// Reads the table for (theta, n_max, p_max) from `dir` when present,
/// otherwise builds it and writes it there.  An empty dir disables caching.
/// Unreadable or mismatched cache files are rebuilt with a warning.
CoefficientTable cached_tables(double theta, int n_max, int p_max, const std::string& dir = table_cache_dir());

}  // namespace mathieu
