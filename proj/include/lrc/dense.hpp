#pragma once

#include <Eigen/Dense>

#include "lrc/errors.hpp"

namespace lrc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Throws InvalidInput if any entry is NaN/Inf. `what` names the caller.
void require_finite(const Matrix& a, const char* what);

// ||A - A^T||_F <= rel_tol * (1 + ||A||_F); false for non-square input.
bool symmetric_within(const Matrix& a, double rel_tol = 1e-10);

struct SymEig {
  Vector values;   // descending
  Matrix vectors;  // orthonormal columns, aligned with `values`
};

// Symmetric eigendecomposition with deterministic output: eigenvalues sorted
// descending, each eigenvector flipped so its largest-magnitude entry is
// positive.
SymEig sym_eig(const Matrix& s);

struct QrWide {
  Matrix q;  // p x p orthogonal
  Matrix r;  // p x n with positive diagonal (mock upper triangular)
};

// QR of a wide matrix A (p x n, p <= n), sign-normalized so R_ii > 0.
// Throws RankDeficient when the leading p x p block is (near-)singular.
QrWide qr_wide(const Matrix& a);

double frobenius_norm(const Matrix& a);
double spectral_norm(const Matrix& a);  // via sym_eig of A^T A

// Counts of eigenvalues beyond the rank-decision threshold
// |lambda| <= 1e-10 * max(1, lambda_max).  Input must be descending.
struct SpectrumRank {
  int positive = 0;
  int negative = 0;
  double threshold = 0.0;
};
SpectrumRank spectrum_rank(const Vector& eigenvalues_desc);

}  // namespace lrc
