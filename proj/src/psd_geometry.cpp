#include "lrc/psd_geometry.hpp"

#include <cmath>
#include <utility>

namespace lrc {
namespace {

// [N | e_{p+1} .. e_n]: lower triangular with positive diagonal, invertible.
Matrix augmented_factor(const FactorMatrix& at) {
  const auto n = at.n();
  const auto p = at.p();
  Matrix au = Matrix::Zero(n, n);
  au.leftCols(p) = at.entries();
  for (Eigen::Index j = p; j < n; ++j) au(j, j) = 1.0;
  return au;
}

// X^{au,0} = N^au [ (N^au)^{-1} W (N^au)^{-T} ]_{1/2} via triangular solves.
// For W in the tangent space the trailing n - p columns vanish.
Matrix candidate_lift(const FactorMatrix& at, const Matrix& w) {
  if (w.rows() != at.n() || w.cols() != at.n())
    throw ShapeError("tangent candidate shape does not match the base point");
  require_finite(w, "tangent candidate");
  if (!symmetric_within(w)) throw InvalidInput("tangent candidate is not symmetric");

  const Matrix au = augmented_factor(at);
  const auto lower = au.triangularView<Eigen::Lower>();
  const Matrix left = lower.solve(w);
  Matrix b = lower.solve(left.transpose()).transpose();
  b = 0.5 * (b + Matrix(b.transpose()));

  Matrix half = b.triangularView<Eigen::StrictlyLower>();
  half.diagonal() = 0.5 * b.diagonal();
  return au * half;
}

double dropped_mass(const Matrix& lift, Eigen::Index p) {
  return lift.rightCols(lift.cols() - p).norm();
}

FactorTangent lift_to_tangent(const FactorMatrix& at, Matrix lift) {
  Matrix x = lift.leftCols(at.p());
  // the product of two lower triangular matrices is lower triangular; scrub
  // the mock-upper entries anyway so the invariant is enforced structurally
  for (Eigen::Index j = 1; j < x.cols(); ++j) x.col(j).head(j).setZero();
  return FactorTangent(std::move(x));
}

void require_anchor(const RestrictedPsd& at, const PsdTangent& w) {
  const Matrix& a = w.anchor().entries();
  const Matrix& b = at.factor().entries();
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("tangent and base point have different shapes");
  if ((a - b).norm() > 1e-9 * (1.0 + b.norm()))
    throw NotInTangentSpace("tangent is anchored at a different base point");
}

}  // namespace

PsdTangent::PsdTangent(Matrix entries, FactorMatrix anchor)
    : entries_(std::move(entries)), anchor_(std::move(anchor)) {}

RestrictedPsd psi(const FactorMatrix& factor) {
  return RestrictedPsd::from_factor(factor);
}

const FactorMatrix& psi_inverse(const RestrictedPsd& m) { return m.factor(); }

Matrix half_lower(const Matrix& symmetric) {
  if (symmetric.rows() != symmetric.cols())
    throw InvalidInput("half-lower part needs a square matrix");
  require_finite(symmetric, "half-lower input");
  if (!symmetric_within(symmetric))
    throw InvalidInput("half-lower part needs a symmetric matrix");
  Matrix out = symmetric.triangularView<Eigen::StrictlyLower>();
  out.diagonal() = 0.5 * symmetric.diagonal();
  return out;
}

PsdTangent differential(const FactorMatrix& at, const FactorTangent& x) {
  if (x.n() != at.n() || x.p() != at.p())
    throw ShapeError("tangent shape does not match the base factor");
  const Matrix half = x.entries() * at.entries().transpose();
  return PsdTangent(half + Matrix(half.transpose()), at);
}

FactorTangent differential_inverse(const FactorMatrix& at, const Matrix& w) {
  Matrix lift = candidate_lift(at, w);
  if (dropped_mass(lift, at.p()) > 1e-8 * (1.0 + w.norm()))
    throw NotInTangentSpace("matrix is not tangent at this base point");
  return lift_to_tangent(at, std::move(lift));
}

bool is_tangent(const FactorMatrix& at, const Matrix& w, double tol) {
  return dropped_mass(candidate_lift(at, w), at.p()) <= tol * (1.0 + w.norm());
}

PsdTangent tangent_at(const RestrictedPsd& at, const Matrix& w, double tol) {
  if (!is_tangent(at.factor(), w, tol))
    throw NotInTangentSpace("matrix is not tangent at this base point");
  return PsdTangent(w, at.factor());
}

double metric_s(const RestrictedPsd& at, const PsdTangent& w, const PsdTangent& v) {
  require_anchor(at, w);
  require_anchor(at, v);
  const FactorMatrix& n = at.factor();
  return metric_l(n, differential_inverse(n, w.entries()),
                  differential_inverse(n, v.entries()));
}

RestrictedPsd geodesic_s(const RestrictedPsd& at, const PsdTangent& w, double t) {
  require_anchor(at, w);
  const FactorMatrix& n = at.factor();
  return psi(geodesic_l(n, differential_inverse(n, w.entries()), t));
}

RestrictedPsd exp_s(const RestrictedPsd& at, const PsdTangent& w) {
  return geodesic_s(at, w, 1.0);
}

PsdTangent log_s(const RestrictedPsd& at, const RestrictedPsd& to) {
  return differential(at.factor(), log_l(at.factor(), to.factor()));
}

double distance_s(const RestrictedPsd& a, const RestrictedPsd& b) {
  return distance_l(a.factor(), b.factor());
}

RestrictedPsd otimes(const RestrictedPsd& a, const RestrictedPsd& b) {
  return psi(group_op(a.factor(), b.factor()));
}

RestrictedPsd otimes_inverse(const RestrictedPsd& a) {
  return psi(group_inverse(a.factor()));
}

RestrictedPsd otimes_identity(Eigen::Index n, Eigen::Index p) {
  return psi(group_identity(n, p));
}

PsdTangent parallel_transport_s(const RestrictedPsd& from, const RestrictedPsd& to,
                                const PsdTangent& w) {
  require_anchor(from, w);
  const FactorMatrix& nf = from.factor();
  const FactorMatrix& nt = to.factor();
  return differential(nt, transport_l(nf, nt, differential_inverse(nf, w.entries())));
}

RestrictedPsd frechet_mean_s(const std::vector<RestrictedPsd>& points,
                             const std::vector<double>& weights) {
  std::vector<FactorMatrix> factors;
  factors.reserve(points.size());
  for (const auto& m : points) factors.push_back(m.factor());
  return psi(frechet_mean_l(factors, weights));
}

}  // namespace lrc
