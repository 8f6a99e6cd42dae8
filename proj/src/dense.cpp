#include "lrc/dense.hpp"

#include <cmath>
#include <string>

namespace lrc {

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) {
    throw InvalidInput(std::string(what) + ": non-finite entries");
  }
}

bool symmetric_within(const Matrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.transpose()).norm() <= rel_tol * (1.0 + a.norm());
}

SymEig sym_eig(const Matrix& s) {
  require_finite(s, "sym_eig");
  if (s.rows() != s.cols()) throw InvalidInput("sym_eig: input not square");
  if (!symmetric_within(s)) throw InvalidInput("sym_eig: input not symmetric");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(s);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("sym_eig: eigensolver did not converge");
  }

  SymEig out;
  out.values = solver.eigenvalues().reverse();          // ascending -> descending
  out.vectors = solver.eigenvectors().rowwise().reverse();
  for (Eigen::Index j = 0; j < out.vectors.cols(); ++j) {
    Eigen::Index imax = 0;
    out.vectors.col(j).cwiseAbs().maxCoeff(&imax);
    if (out.vectors(imax, j) < 0.0) out.vectors.col(j) *= -1.0;
  }
  return out;
}

QrWide qr_wide(const Matrix& a) {
  require_finite(a, "qr_wide");
  const Eigen::Index p = a.rows(), n = a.cols();
  if (p > n) throw ShapeError("qr_wide: input has more rows than columns");

  Eigen::HouseholderQR<Matrix> qr(a);
  QrWide out;
  out.q = qr.householderQ() * Matrix::Identity(p, p);
  out.r = qr.matrixQR().triangularView<Eigen::Upper>();

  const double scale = std::max(1.0, a.norm());
  for (Eigen::Index i = 0; i < p; ++i) {
    if (std::abs(out.r(i, i)) <= 1e-12 * scale) {
      throw RankDeficient("qr_wide: leading block rank-deficient at pivot " +
                          std::to_string(i + 1));
    }
    if (out.r(i, i) < 0.0) {
      out.r.row(i) *= -1.0;
      out.q.col(i) *= -1.0;
    }
  }
  return out;
}

double frobenius_norm(const Matrix& a) {
  require_finite(a, "frobenius_norm");
  return a.norm();
}

double spectral_norm(const Matrix& a) {
  require_finite(a, "spectral_norm");
  if (a.size() == 0) return 0.0;
  Matrix g = a.transpose() * a;
  Matrix gs = 0.5 * (g + g.transpose());
  SymEig eig = sym_eig(gs);
  return std::sqrt(std::max(0.0, eig.values(0)));
}

SpectrumRank spectrum_rank(const Vector& eigenvalues_desc) {
  SpectrumRank out;
  if (eigenvalues_desc.size() == 0) return out;
  out.threshold = 1e-10 * std::max(1.0, eigenvalues_desc(0));
  for (Eigen::Index i = 0; i < eigenvalues_desc.size(); ++i) {
    if (eigenvalues_desc(i) > out.threshold) ++out.positive;
    if (eigenvalues_desc(i) < -out.threshold) ++out.negative;
  }
  return out;
}

}  // namespace lrc
