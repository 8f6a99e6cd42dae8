#pragma once

#include <string>
#include <vector>

#include "lrc/factor_geometry.hpp"

namespace lrc {

// Estimated principal eigenspace: n x k with orthonormal columns, tagged with
// the producing method ("lrc", "dpca", "eigv", "fpca").
struct EigenspaceEstimate {
  Matrix basis;
  std::string method;
};

enum class SubspaceNorm { spectral, frobenius };

// Rank-k factor of each input via top-k spectral truncation, factor-space
// Frechet mean, top-k eigenvectors of the squared mean.
EigenspaceEstimate lrc_estimate(const std::vector<Matrix>& inputs, int k);

// Average of the per-input top-k eigenprojectors, then its top eigenvectors.
EigenspaceEstimate dpca_estimate(const std::vector<Matrix>& inputs, int k);

// Average of per-input eigenvector frames, columns sign-aligned against the
// first input, then top eigenvectors of the averaged frame's square.
EigenspaceEstimate eigv_ave_estimate(const std::vector<Matrix>& inputs, int k);

// PCA of the pooled sample covariance; each batch holds one row per sample.
EigenspaceEstimate fpca_estimate(const std::vector<Matrix>& batches, int k);

// Distance between the spanned subspaces: norm of the projector difference.
// Invariant under right rotation of either frame; in [0, 1] for the
// spectral choice.
double sin_theta(const Matrix& vhat, const Matrix& v,
                 SubspaceNorm norm = SubspaceNorm::spectral);
double sin_theta(const EigenspaceEstimate& vhat, const Matrix& v,
                 SubspaceNorm norm = SubspaceNorm::spectral);

}  // namespace lrc
