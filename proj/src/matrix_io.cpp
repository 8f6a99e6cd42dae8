#include "lrc/matrix_io.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>

namespace lrc {

Matrix read_matrix(std::istream& in) {
  long long rows = 0, cols = 0;
  if (!(in >> rows >> cols)) {
    throw InvalidInput("read_matrix: missing 'rows cols' header");
  }
  if (rows < 1 || cols < 1) {
    throw InvalidInput("read_matrix: dimensions must be positive");
  }
  Matrix a(rows, cols);
  for (long long i = 0; i < rows; ++i) {
    for (long long j = 0; j < cols; ++j) {
      if (!(in >> a(i, j))) {
        throw InvalidInput("read_matrix: truncated or malformed entry at row " +
                           std::to_string(i + 1));
      }
    }
  }
  require_finite(a, "read_matrix");
  return a;
}

Matrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const Matrix& a) {
  require_finite(a, "write_matrix");
  out << a.rows() << ' ' << a.cols() << '\n';
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out << a(i, j) << (j + 1 < a.cols() ? ' ' : '\n');
    }
  }
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& a) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open " + path.string() + " for writing");
  write_matrix(out, a);
  if (!out) throw InvalidInput("write failed for " + path.string());
}

}  // namespace lrc
