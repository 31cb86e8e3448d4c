#pragma once

#include <iosfwd>
#include <string>

#include "gwl/types.hpp"

namespace gwl {

// Shortest round-trippable decimal form ("%.17g"-equivalent).
std::string format_double(double value);

// Row-major dense CSV; the optional header row is "c0,c1,...".
void write_matrix_csv(std::ostream& out, const Matrix& m, bool header = false);
Matrix read_matrix_csv(std::istream& in, bool header = false);

// 64-bit FNV-1a of a file's bytes, as 16 hex digits.
std::string file_fingerprint(const std::string& path);

}  // namespace gwl
