#pragma once

#include <vector>

#include "lrc/cholesky.hpp"

namespace lrc {

// Tangent vector to the reduced Cholesky space: mock lower triangular with
// unconstrained (possibly negative) mock diagonal.
class FactorTangent {
 public:
  explicit FactorTangent(Matrix entries);
  static FactorTangent zero(Eigen::Index n, Eigen::Index p);

  const Matrix& entries() const { return m_; }
  Eigen::Index n() const { return m_.rows(); }
  Eigen::Index p() const { return m_.cols(); }

 private:
  Matrix m_;
};

// Riemannian inner product at N: Euclidean on strict-lower entries,
// N_ii^{-2}-weighted on the mock diagonal.
double metric_l(const FactorMatrix& at, const FactorTangent& x, const FactorTangent& y);

// Geodesic through N with velocity X: mock diagonal N_ii exp(t X_ii / N_ii),
// strict lower N_ij + t X_ij.  Defined for every real t.
FactorMatrix geodesic_l(const FactorMatrix& at, const FactorTangent& x, double t);

FactorMatrix exp_l(const FactorMatrix& at, const FactorTangent& x);
FactorTangent log_l(const FactorMatrix& at, const FactorMatrix& to);
double distance_l(const FactorMatrix& a, const FactorMatrix& b);

// Global chart: x_ii = log N_ii, x_ij = N_ij, flattened column-major over
// (i,j) with j = 1..p, i = j..n.  The chart is an isometry onto Euclidean
// space, so geodesic distance equals coordinate distance.
Vector chart(const FactorMatrix& factor);
FactorMatrix chart_inverse(const Vector& coords, Eigen::Index n, Eigen::Index p);

// Abelian group: mock diagonals multiply, strict lower triangles add.
FactorMatrix group_op(const FactorMatrix& a, const FactorMatrix& b);
FactorMatrix group_inverse(const FactorMatrix& a);
FactorMatrix group_identity(Eigen::Index n, Eigen::Index p);

// Parallel transport from T_from to T_to: scale mock diagonal by
// to_ii / from_ii, keep strict-lower entries.  An isometry.
FactorTangent transport_l(const FactorMatrix& from, const FactorMatrix& to,
                          const FactorTangent& x);

// Weighted Fréchet mean: geometric mean along the mock diagonal, arithmetic
// mean on the strict lower triangle.  Default weights are uniform.  Weights
// must lie in (0, 1] and sum to 1 within 1e-10.
FactorMatrix frechet_mean_l(const std::vector<FactorMatrix>& factors,
                            const std::vector<double>& weights = {});

}  // namespace lrc
