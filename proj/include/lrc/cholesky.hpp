#pragma once

#include "lrc/dense.hpp"

namespace lrc {

// A point of the reduced Cholesky space: n x p (n > p) mock lower triangular
// with strictly positive mock diagonal.  Entries above the mock diagonal must
// be exactly zero.
class FactorMatrix {
 public:
  explicit FactorMatrix(Matrix entries);

  const Matrix& entries() const { return m_; }
  Eigen::Index n() const { return m_.rows(); }
  Eigen::Index p() const { return m_.cols(); }

 private:
  Matrix m_;
};

// Free-function form of the validating constructor.
FactorMatrix validate_factor(Matrix candidate);

// An n x n symmetric PSD matrix of rank exactly p whose first p columns are
// linearly independent.  Carries its reduced Cholesky factor, computed once
// at construction.
class RestrictedPsd {
 public:
  RestrictedPsd(Matrix m, int p);
  static RestrictedPsd from_factor(FactorMatrix factor);

  const Matrix& entries() const { return m_; }
  const FactorMatrix& factor() const { return n_; }
  Eigen::Index n() const { return m_.rows(); }
  Eigen::Index p() const { return n_.p(); }

 private:
  RestrictedPsd(Matrix m, FactorMatrix factor)
      : m_(std::move(m)), n_(std::move(factor)) {}

  Matrix m_;
  FactorMatrix n_;

  friend RestrictedPsd approximate_into_restricted(const Matrix&, int, double);
};

// The inductive Cholesky program restricted to the first p columns.  Throws
// NotRestricted(i) when pivot i hits the tolerance, i.e. the first p columns
// of m are linearly dependent.
FactorMatrix reduced_cholesky_direct(const Matrix& m, int p);

// Same factor via eigendecomposition: sym_eig -> Z = U Lambda^{1/2} ->
// qr_wide(Z^T) -> N = R^T.  Requires exactly p positive eigenvalues.
FactorMatrix reduced_cholesky_spectral(const Matrix& m, int p);

// Spectral route for noisy inputs: keeps the top k eigenpairs (which must all
// be positive) before factorizing.  Ingestion path for perturbed matrices.
FactorMatrix reduced_cholesky_top_k(const Matrix& m, int k);

// Positive spectrum of N N^T, descending, computed from the p x p Gram matrix.
Vector gram_spectrum(const FactorMatrix& factor);

// Full n x n Cholesky factor with zero-pivot continuation: a pivot at the
// tolerance zeroes its column and the program moves on.  For PSD input of
// rank r the result has exactly r nonzero columns.
Matrix cholesky_continuation(const Matrix& m);

// Nearest-in-spirit member of the restricted class: factor with continuation,
// replace each zero mock diagonal of the reduced factor with eps, return
// N_eps N_eps^T.  ||m - result||_F = O(eps).  A matrix already in the class
// is returned unchanged.
RestrictedPsd approximate_into_restricted(const Matrix& m, int p, double eps);

}  // namespace lrc
