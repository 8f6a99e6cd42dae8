#pragma once

#include <filesystem>
#include <iosfwd>

#include "lrc/dense.hpp"

namespace lrc {

// Text format used everywhere: first line "rows cols", then one
// whitespace-separated row per line.  Written with 17 significant digits so a
// round trip is exact to parsing.
Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::filesystem::path& path);
void write_matrix(std::ostream& out, const Matrix& a);
void write_matrix_file(const std::filesystem::path& path, const Matrix& a);

}  // namespace lrc
