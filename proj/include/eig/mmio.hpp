#pragma once

#include <iosfwd>
#include <string>

#include "eig/matrix.hpp"

namespace eig {

/// Matrix Market coordinate reader (real, general, 1-indexed). Duplicate
/// entries are a parse error carrying the offending line number.
DataMatrix read_matrix_market(std::istream& in);
DataMatrix read_matrix_market_file(const std::string& path);

/// Coordinate writer; values printed with 17 significant digits so a
/// write/read round trip is bit-exact.
void write_matrix_market(std::ostream& out, const DataMatrix& A);
void write_matrix_market_file(const std::string& path, const DataMatrix& A);

} // namespace eig
