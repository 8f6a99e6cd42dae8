#include "lrc/cholesky.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace lrc {

namespace {

constexpr double kPivotRelTol = 1e-12;

double pivot_tolerance(double diag_entry) {
  return kPivotRelTol * std::max(1.0, diag_entry);
}

void require_square_symmetric(const Matrix& m, const char* what) {
  require_finite(m, what);
  if (m.rows() != m.cols()) {
    throw InvalidInput(std::string(what) + ": input not square");
  }
  if (!symmetric_within(m)) {
    throw InvalidInput(std::string(what) + ": input not symmetric");
  }
}

void require_factor_shape(Eigen::Index n, Eigen::Index p, const char* what) {
  if (p < 1 || n < 1) {
    throw ShapeError(std::string(what) + ": dimensions must be positive");
  }
  if (n == p) {
    throw UnsupportedShape(std::string(what) +
                           ": n = p is outside the restricted geometry (n > p required)");
  }
  if (n < p) {
    throw ShapeError(std::string(what) + ": more columns than rows");
  }
}

}  // namespace

FactorMatrix::FactorMatrix(Matrix entries) : m_(std::move(entries)) {
  require_finite(m_, "validate_factor");
  require_factor_shape(m_.rows(), m_.cols(), "validate_factor");
  const Eigen::Index p = m_.cols();
  for (Eigen::Index i = 0; i + 1 < p; ++i) {
    for (Eigen::Index j = i + 1; j < p; ++j) {
      if (m_(i, j) != 0.0) {
        throw ShapeError("validate_factor: nonzero entry above the mock diagonal at (" +
                         std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
    }
  }
  for (Eigen::Index i = 0; i < p; ++i) {
    if (!(m_(i, i) > 0.0)) {
      throw ZeroOrNegativePivot(
          int(i + 1), "validate_factor: mock diagonal entry " + std::to_string(i + 1) +
                          " is not strictly positive");
    }
  }
}

FactorMatrix validate_factor(Matrix candidate) {
  return FactorMatrix(std::move(candidate));
}

FactorMatrix reduced_cholesky_direct(const Matrix& m, int p) {
  require_square_symmetric(m, "reduced_cholesky_direct");
  const Eigen::Index n = m.rows();
  require_factor_shape(n, p, "reduced_cholesky_direct");

  Matrix f = Matrix::Zero(n, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const double rad = m(j, j) - f.row(j).head(j).squaredNorm();
    if (rad <= pivot_tolerance(m(j, j))) {
      throw NotRestricted(int(j + 1),
                          "reduced_cholesky_direct: pivot " + std::to_string(j + 1) +
                              " vanishes; matrix is outside the restricted class");
    }
    f(j, j) = std::sqrt(rad);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      f(i, j) = (m(i, j) - f.row(i).head(j).dot(f.row(j).head(j))) / f(j, j);
    }
  }
  return FactorMatrix(std::move(f));
}

FactorMatrix reduced_cholesky_spectral(const Matrix& m, int p) {
  require_square_symmetric(m, "reduced_cholesky_spectral");
  const Eigen::Index n = m.rows();
  require_factor_shape(n, p, "reduced_cholesky_spectral");

  SymEig eig = sym_eig(m);
  const auto rank = spectrum_rank(eig.values);
  if (rank.positive != p) {
    throw RankMismatch("reduced_cholesky_spectral: expected " + std::to_string(p) +
                       " positive eigenvalues, found " + std::to_string(rank.positive));
  }
  Matrix z = eig.vectors.leftCols(p) *
             eig.values.head(p).cwiseSqrt().asDiagonal();
  QrWide qr = qr_wide(z.transpose());
  return FactorMatrix(qr.r.transpose());
}

FactorMatrix reduced_cholesky_top_k(const Matrix& m, int k) {
  require_square_symmetric(m, "reduced_cholesky_top_k");
  const Eigen::Index n = m.rows();
  require_factor_shape(n, k, "reduced_cholesky_top_k");

  SymEig eig = sym_eig(m);
  const auto rank = spectrum_rank(eig.values);
  if (rank.positive < k) {
    throw RankMismatch("reduced_cholesky_top_k: need " + std::to_string(k) +
                       " positive eigenvalues, found " + std::to_string(rank.positive));
  }
  Matrix z = eig.vectors.leftCols(k) *
             eig.values.head(k).cwiseSqrt().asDiagonal();
  QrWide qr = qr_wide(z.transpose());
  return FactorMatrix(qr.r.transpose());
}

Vector gram_spectrum(const FactorMatrix& factor) {
  const Matrix& f = factor.entries();
  Matrix g = f.transpose() * f;
  Matrix gs = 0.5 * (g + g.transpose());
  return sym_eig(gs).values;
}

Matrix cholesky_continuation(const Matrix& m) {
  require_square_symmetric(m, "cholesky_continuation");
  const Eigen::Index n = m.rows();
  Matrix l = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double rad = m(j, j) - l.row(j).head(j).squaredNorm();
    if (rad <= pivot_tolerance(m(j, j))) continue;  // dependent column stays zero
    l(j, j) = std::sqrt(rad);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      l(i, j) = (m(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / l(j, j);
    }
  }
  return l;
}

RestrictedPsd approximate_into_restricted(const Matrix& m, int p, double eps) {
  if (!(eps > 0.0)) {
    throw InvalidInput("approximate_into_restricted: eps must be positive");
  }
  require_square_symmetric(m, "approximate_into_restricted");
  const Eigen::Index n = m.rows();
  require_factor_shape(n, p, "approximate_into_restricted");

  Matrix l = cholesky_continuation(m);
  std::vector<Eigen::Index> live;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (l(j, j) > 0.0) live.push_back(j);
  }
  if (Eigen::Index(live.size()) != p) {
    throw RankMismatch("approximate_into_restricted: matrix has rank " +
                       std::to_string(live.size()) + ", expected " + std::to_string(p));
  }
  if ((m - l * l.transpose()).norm() > 1e-8 * (1.0 + m.norm())) {
    throw NonPsd("approximate_into_restricted: input is not positive semidefinite");
  }

  bool already_restricted = true;
  Matrix f(n, p);
  for (int j = 0; j < p; ++j) {
    f.col(j) = l.col(live[size_t(j)]);
    if (live[size_t(j)] != j) already_restricted = false;
  }
  if (already_restricted) {
    return RestrictedPsd(m, FactorMatrix(std::move(f)));
  }
  for (int j = 0; j < p; ++j) {
    if (f(j, j) == 0.0) f(j, j) = eps;
  }
  return RestrictedPsd::from_factor(FactorMatrix(std::move(f)));
}

RestrictedPsd RestrictedPsd::from_factor(FactorMatrix factor) {
  const Matrix& f = factor.entries();
  Matrix m = f * f.transpose();
  Matrix sym = 0.5 * (m + m.transpose());
  return RestrictedPsd(std::move(sym), std::move(factor));
}

namespace {

FactorMatrix validated_factor_of(const Matrix& m, int p) {
  FactorMatrix factor = reduced_cholesky_direct(m, p);
  const Matrix& f = factor.entries();
  // positive pivot past column p means rank > p
  for (Eigen::Index j = p; j < m.rows(); ++j) {
    const double rad = m(j, j) - f.row(j).squaredNorm();
    if (rad > kPivotRelTol * std::max(1.0, m(j, j))) {
      throw RankMismatch("RestrictedPsd: rank exceeds " + std::to_string(p));
    }
  }
  if ((m - f * f.transpose()).norm() > 1e-8 * (1.0 + m.norm())) {
    throw NonPsd("RestrictedPsd: matrix is not PSD of rank " + std::to_string(p));
  }
  return factor;
}

}  // namespace

RestrictedPsd::RestrictedPsd(Matrix m, int p)
    : m_(std::move(m)), n_(validated_factor_of(m_, p)) {}

}  // namespace lrc
