#include "lrc/estimators.hpp"

#include <utility>

namespace lrc {
namespace {

void require_inputs(const std::vector<Matrix>& inputs, int k) {
  if (k < 1) throw InvalidInput("rank must be at least 1");
  if (inputs.empty()) throw InvalidInput("need at least one input matrix");
}

// Top-k eigenvectors, insisting the spectrum actually has k positive entries.
Matrix top_k_vectors(const Matrix& m, int k) {
  auto eig = sym_eig(m);
  if (eig.values.size() < k) throw ShapeError("rank exceeds matrix dimension");
  if (spectrum_rank(eig.values).positive < k)
    throw RankMismatch("input has fewer positive eigenvalues than the rank");
  return eig.vectors.leftCols(k);
}

Matrix top_k_of_symmetrized(const Matrix& m, int k) {
  return sym_eig(0.5 * (m + Matrix(m.transpose()))).vectors.leftCols(k);
}

}  // namespace

EigenspaceEstimate lrc_estimate(const std::vector<Matrix>& inputs, int k) {
  require_inputs(inputs, k);
  std::vector<FactorMatrix> factors;
  factors.reserve(inputs.size());
  for (const auto& m : inputs) factors.push_back(reduced_cholesky_top_k(m, k));
  const Matrix mean = frechet_mean_l(factors).entries();
  return {top_k_of_symmetrized(mean * mean.transpose(), k), "lrc"};
}

EigenspaceEstimate dpca_estimate(const std::vector<Matrix>& inputs, int k) {
  require_inputs(inputs, k);
  Matrix acc;
  for (const auto& m : inputs) {
    const Matrix u = top_k_vectors(m, k);
    if (acc.size() == 0) acc = Matrix::Zero(u.rows(), u.rows());
    if (u.rows() != acc.rows()) throw ShapeError("inputs have mixed dimensions");
    acc += u * u.transpose();
  }
  acc /= double(inputs.size());
  return {top_k_of_symmetrized(acc, k), "dpca"};
}

EigenspaceEstimate eigv_ave_estimate(const std::vector<Matrix>& inputs, int k) {
  require_inputs(inputs, k);
  const Matrix first = top_k_vectors(inputs.front(), k);
  Matrix acc = first;
  for (std::size_t i = 1; i < inputs.size(); ++i) {
    Matrix u = top_k_vectors(inputs[i], k);
    if (u.rows() != first.rows()) throw ShapeError("inputs have mixed dimensions");
    for (int j = 0; j < k; ++j)
      if (first.col(j).dot(u.col(j)) < 0.0) u.col(j) = -u.col(j);
    acc += u;
  }
  acc /= double(inputs.size());
  return {top_k_of_symmetrized(acc * acc.transpose(), k), "eigv"};
}

EigenspaceEstimate fpca_estimate(const std::vector<Matrix>& batches, int k) {
  if (k < 1) throw InvalidInput("rank must be at least 1");
  Eigen::Index total = 0;
  for (const auto& b : batches) total += b.rows();
  if (total < k) throw InsufficientData("fewer samples than the requested rank");

  const Eigen::Index n = batches.front().cols();
  if (k > n) throw ShapeError("rank exceeds sample dimension");
  Matrix cov = Matrix::Zero(n, n);
  for (const auto& b : batches) {
    if (b.cols() != n) throw ShapeError("sample batches have mixed dimensions");
    require_finite(b, "sample batch");
    cov += b.transpose() * b;
  }
  cov /= double(total);
  return {top_k_of_symmetrized(cov, k), "fpca"};
}

namespace {

void require_orthonormal(const Matrix& v, const char* what) {
  require_finite(v, what);
  const Matrix gram = v.transpose() * v;
  if ((gram - Matrix::Identity(v.cols(), v.cols())).norm() > 1e-8)
    throw InvalidInput(std::string(what) + " does not have orthonormal columns");
}

}  // namespace

double sin_theta(const Matrix& vhat, const Matrix& v, SubspaceNorm norm) {
  if (vhat.rows() != v.rows() || vhat.cols() != v.cols())
    throw ShapeError("subspace frames have different shapes");
  require_orthonormal(vhat, "estimated basis");
  require_orthonormal(v, "reference basis");
  const Matrix diff = vhat * vhat.transpose() - v * v.transpose();
  return norm == SubspaceNorm::spectral ? spectral_norm(diff) : diff.norm();
}

double sin_theta(const EigenspaceEstimate& vhat, const Matrix& v, SubspaceNorm norm) {
  return sin_theta(vhat.basis, v, norm);
}

}  // namespace lrc
