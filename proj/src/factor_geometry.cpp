#include "lrc/factor_geometry.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace lrc {

namespace {

void require_same_shape(Eigen::Index n1, Eigen::Index p1, Eigen::Index n2,
                        Eigen::Index p2, const char* what) {
  if (n1 != n2 || p1 != p2) {
    throw ShapeError(std::string(what) + ": operands have different shapes");
  }
}

std::vector<double> resolve_weights(size_t k, const std::vector<double>& weights,
                                    const char* what) {
  if (k == 0) throw InvalidInput(std::string(what) + ": empty list");
  if (weights.empty()) {
    return std::vector<double>(k, 1.0 / double(k));
  }
  if (weights.size() != k) {
    throw InvalidInput(std::string(what) + ": weight count does not match input count");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || w > 1.0) {
      throw InvalidInput(std::string(what) + ": weights must lie in (0, 1]");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw InvalidInput(std::string(what) + ": weights must sum to 1");
  }
  return weights;
}

}  // namespace

FactorTangent::FactorTangent(Matrix entries) : m_(std::move(entries)) {
  require_finite(m_, "FactorTangent");
  const Eigen::Index n = m_.rows(), p = m_.cols();
  if (p < 1 || n <= p) {
    throw ShapeError("FactorTangent: need n > p >= 1");
  }
  for (Eigen::Index i = 0; i + 1 < p; ++i) {
    for (Eigen::Index j = i + 1; j < p; ++j) {
      if (m_(i, j) != 0.0) {
        throw ShapeError("FactorTangent: nonzero entry above the mock diagonal");
      }
    }
  }
}

FactorTangent FactorTangent::zero(Eigen::Index n, Eigen::Index p) {
  return FactorTangent(Matrix::Zero(n, p));
}

double metric_l(const FactorMatrix& at, const FactorTangent& x, const FactorTangent& y) {
  require_same_shape(at.n(), at.p(), x.n(), x.p(), "metric_l");
  require_same_shape(at.n(), at.p(), y.n(), y.p(), "metric_l");
  const Matrix& nm = at.entries();
  const Matrix& xm = x.entries();
  const Matrix& ym = y.entries();
  double acc = 0.0;
  for (Eigen::Index j = 0; j < at.p(); ++j) {
    const double d = nm(j, j);
    acc += xm(j, j) * ym(j, j) / (d * d);
    for (Eigen::Index i = j + 1; i < at.n(); ++i) acc += xm(i, j) * ym(i, j);
  }
  return acc;
}

FactorMatrix geodesic_l(const FactorMatrix& at, const FactorTangent& x, double t) {
  require_same_shape(at.n(), at.p(), x.n(), x.p(), "geodesic_l");
  Matrix out = at.entries() + t * x.entries();
  for (Eigen::Index j = 0; j < at.p(); ++j) {
    const double d = at.entries()(j, j);
    out(j, j) = d * std::exp(t * x.entries()(j, j) / d);
  }
  return FactorMatrix(std::move(out));
}

FactorMatrix exp_l(const FactorMatrix& at, const FactorTangent& x) {
  return geodesic_l(at, x, 1.0);
}

FactorTangent log_l(const FactorMatrix& at, const FactorMatrix& to) {
  require_same_shape(at.n(), at.p(), to.n(), to.p(), "log_l");
  Matrix out = to.entries() - at.entries();
  for (Eigen::Index j = 0; j < at.p(); ++j) {
    const double d = at.entries()(j, j);
    out(j, j) = (std::log(to.entries()(j, j)) - std::log(d)) * d;
  }
  return FactorTangent(std::move(out));
}

double distance_l(const FactorMatrix& a, const FactorMatrix& b) {
  require_same_shape(a.n(), a.p(), b.n(), b.p(), "distance_l");
  const Matrix& am = a.entries();
  const Matrix& bm = b.entries();
  double acc = 0.0;
  for (Eigen::Index j = 0; j < a.p(); ++j) {
    const double d = std::log(bm(j, j)) - std::log(am(j, j));
    acc += d * d;
    for (Eigen::Index i = j + 1; i < a.n(); ++i) {
      const double s = bm(i, j) - am(i, j);
      acc += s * s;
    }
  }
  return std::sqrt(acc);
}

Vector chart(const FactorMatrix& factor) {
  const Matrix& f = factor.entries();
  const Eigen::Index n = factor.n(), p = factor.p();
  Vector coords(n * p - p * (p - 1) / 2);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < p; ++j) {
    coords(k++) = std::log(f(j, j));
    for (Eigen::Index i = j + 1; i < n; ++i) coords(k++) = f(i, j);
  }
  return coords;
}

FactorMatrix chart_inverse(const Vector& coords, Eigen::Index n, Eigen::Index p) {
  if (p < 1 || n <= p) throw ShapeError("chart_inverse: need n > p >= 1");
  const Eigen::Index expected = n * p - p * (p - 1) / 2;
  if (coords.size() != expected) {
    throw ShapeError("chart_inverse: expected " + std::to_string(expected) +
                     " coordinates, got " + std::to_string(coords.size()));
  }
  Matrix f = Matrix::Zero(n, p);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < p; ++j) {
    f(j, j) = std::exp(coords(k++));
    for (Eigen::Index i = j + 1; i < n; ++i) f(i, j) = coords(k++);
  }
  return FactorMatrix(std::move(f));
}

FactorMatrix group_op(const FactorMatrix& a, const FactorMatrix& b) {
  require_same_shape(a.n(), a.p(), b.n(), b.p(), "group_op");
  Matrix out = a.entries() + b.entries();
  for (Eigen::Index j = 0; j < a.p(); ++j) {
    out(j, j) = a.entries()(j, j) * b.entries()(j, j);
  }
  return FactorMatrix(std::move(out));
}

FactorMatrix group_inverse(const FactorMatrix& a) {
  Matrix out = -a.entries();
  for (Eigen::Index j = 0; j < a.p(); ++j) out(j, j) = 1.0 / a.entries()(j, j);
  return FactorMatrix(std::move(out));
}

FactorMatrix group_identity(Eigen::Index n, Eigen::Index p) {
  if (p < 1 || n <= p) throw ShapeError("group_identity: need n > p >= 1");
  Matrix f = Matrix::Zero(n, p);
  f.diagonal().setOnes();
  return FactorMatrix(std::move(f));
}

FactorTangent transport_l(const FactorMatrix& from, const FactorMatrix& to,
                          const FactorTangent& x) {
  require_same_shape(from.n(), from.p(), to.n(), to.p(), "transport_l");
  require_same_shape(from.n(), from.p(), x.n(), x.p(), "transport_l");
  Matrix out = x.entries();
  for (Eigen::Index j = 0; j < from.p(); ++j) {
    out(j, j) *= to.entries()(j, j) / from.entries()(j, j);
  }
  return FactorTangent(std::move(out));
}

FactorMatrix frechet_mean_l(const std::vector<FactorMatrix>& factors,
                            const std::vector<double>& weights) {
  const auto w = resolve_weights(factors.size(), weights, "frechet_mean_l");
  const Eigen::Index n = factors.front().n(), p = factors.front().p();
  for (const auto& f : factors) {
    require_same_shape(n, p, f.n(), f.p(), "frechet_mean_l");
  }
  if (factors.size() == 1) return factors.front();

  // log-domain geometric mean on the mock diagonal for overflow safety
  Matrix out = Matrix::Zero(n, p);
  Vector log_diag = Vector::Zero(p);
  for (size_t l = 0; l < factors.size(); ++l) {
    const Matrix& f = factors[l].entries();
    out += w[l] * f;
    for (Eigen::Index j = 0; j < p; ++j) log_diag(j) += w[l] * std::log(f(j, j));
  }
  for (Eigen::Index j = 0; j < p; ++j) out(j, j) = std::exp(log_diag(j));
  return FactorMatrix(std::move(out));
}

}  // namespace lrc
