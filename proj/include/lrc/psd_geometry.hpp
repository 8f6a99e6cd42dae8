#pragma once

#include <vector>

#include "lrc/factor_geometry.hpp"

namespace lrc {

// Symmetric matrix W = X N^T + N X^T tangent to the restricted PSD set at
// the point with factor N.  The anchor travels with the value so that every
// consumer can refuse tangents taken at a different base point.
class PsdTangent {
 public:
  const Matrix& entries() const { return entries_; }
  const FactorMatrix& anchor() const { return anchor_; }
  Eigen::Index n() const { return anchor_.n(); }
  Eigen::Index p() const { return anchor_.p(); }

 private:
  PsdTangent(Matrix entries, FactorMatrix anchor);

  friend PsdTangent differential(const FactorMatrix&, const FactorTangent&);
  friend PsdTangent tangent_at(const RestrictedPsd&, const Matrix&, double);
  friend PsdTangent log_s(const RestrictedPsd&, const RestrictedPsd&);
  friend PsdTangent parallel_transport_s(const RestrictedPsd&, const RestrictedPsd&,
                                         const PsdTangent&);

  Matrix entries_;
  FactorMatrix anchor_;
};

RestrictedPsd psi(const FactorMatrix& factor);
const FactorMatrix& psi_inverse(const RestrictedPsd& m);

// Keep the strict lower triangle, halve the diagonal, zero the rest.
Matrix half_lower(const Matrix& symmetric);

PsdTangent differential(const FactorMatrix& at, const FactorTangent& x);
FactorTangent differential_inverse(const FactorMatrix& at, const Matrix& w);
bool is_tangent(const FactorMatrix& at, const Matrix& w, double tol = 1e-8);

// Boundary constructor: validates membership of a raw symmetric matrix.
PsdTangent tangent_at(const RestrictedPsd& at, const Matrix& w, double tol = 1e-8);

double metric_s(const RestrictedPsd& at, const PsdTangent& w, const PsdTangent& v);
RestrictedPsd geodesic_s(const RestrictedPsd& at, const PsdTangent& w, double t);
RestrictedPsd exp_s(const RestrictedPsd& at, const PsdTangent& w);
PsdTangent log_s(const RestrictedPsd& at, const RestrictedPsd& to);
double distance_s(const RestrictedPsd& a, const RestrictedPsd& b);

RestrictedPsd otimes(const RestrictedPsd& a, const RestrictedPsd& b);
RestrictedPsd otimes_inverse(const RestrictedPsd& a);
RestrictedPsd otimes_identity(Eigen::Index n, Eigen::Index p);

PsdTangent parallel_transport_s(const RestrictedPsd& from, const RestrictedPsd& to,
                                const PsdTangent& w);

RestrictedPsd frechet_mean_s(const std::vector<RestrictedPsd>& points,
                             const std::vector<double>& weights = {});

}  // namespace lrc
