#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "lrc/factor_geometry.hpp"

using lrc::FactorMatrix;
using lrc::FactorTangent;
using lrc::Matrix;
using lrc::Vector;

namespace {

FactorMatrix random_factor(int n, int p, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  Matrix f = Matrix::Zero(n, p);
  for (int j = 0; j < p; ++j) {
    f(j, j) = std::abs(nd(gen)) + 0.1;
    for (int i = j + 1; i < n; ++i) f(i, j) = nd(gen);
  }
  return FactorMatrix(std::move(f));
}

// mock diagonal scaled to the base factor so geodesics at |t| = 100 stay in
// double range
FactorTangent random_tangent(const FactorMatrix& base, std::mt19937_64& gen,
                             double diag_scale = 1.0) {
  std::normal_distribution<double> nd;
  const int n = int(base.n()), p = int(base.p());
  Matrix x = Matrix::Zero(n, p);
  for (int j = 0; j < p; ++j) {
    x(j, j) = diag_scale * base.entries()(j, j) * nd(gen);
    for (int i = j + 1; i < n; ++i) x(i, j) = nd(gen);
  }
  return FactorTangent(std::move(x));
}

FactorMatrix np_factor() {
  Matrix f(3, 2);
  f << 1, 0,
       2, 1,
       3, 2;
  return FactorMatrix(std::move(f));
}

FactorMatrix nq_factor() {
  Matrix f(3, 2);
  f << 1, 0,
       2, 1,
      -1, -1;
  return FactorMatrix(std::move(f));
}

}  // namespace

TEST_SUITE("factor-geometry") {

TEST_CASE("FactorTangent: shape validation") {
  Matrix ok(3, 2);
  ok << -1, 0,
         2, -5,
         3, 2;
  CHECK(FactorTangent(ok).p() == 2);

  Matrix bad(3, 2);
  bad << 1, 5,
         2, 1,
         3, 2;
  CHECK_THROWS_AS(FactorTangent{bad}, lrc::ShapeError);
}

TEST_CASE("metric_l: pinned values") {
  auto n = np_factor();
  auto zero = FactorTangent::zero(3, 2);
  CHECK(lrc::metric_l(n, zero, zero) == 0.0);

  Matrix id = Matrix::Zero(3, 2);
  id.diagonal().setOnes();
  FactorMatrix mock_id(id);
  Matrix e11 = Matrix::Zero(3, 2);
  e11(0, 0) = 1.0;
  FactorTangent x(e11);
  CHECK(lrc::metric_l(mock_id, x, x) == doctest::Approx(1.0));

  Matrix nm(3, 2);
  nm << 2, 0,
        0, 3,
        0, 0;
  Matrix xm(3, 2);
  xm << 2, 0,
        1, 3,
        1, 1;
  FactorTangent xt(xm);
  CHECK(lrc::metric_l(FactorMatrix(nm), xt, xt) == doctest::Approx(5.0));

  std::mt19937_64 gen(5);
  auto n42 = random_factor(4, 2, gen);
  CHECK_THROWS_AS(lrc::metric_l(n42, x, x), lrc::ShapeError);
}

TEST_CASE("geodesic_l: pinned values") {
  auto n = np_factor();
  Matrix xm(3, 2);
  xm << 1, 0,
        1, 0,
        1, 1;
  FactorTangent x(xm);

  auto at0 = lrc::geodesic_l(n, x, 0.0);
  CHECK((at0.entries() - n.entries()).norm() == 0.0);

  auto at_half = lrc::geodesic_l(n, x, 0.5);
  Matrix expected(3, 2);
  expected << std::exp(0.5), 0,
              2.5, 1.0,
              3.5, 2.5;
  CHECK((at_half.entries() - expected).norm() <= 1e-14);

  Matrix id = Matrix::Zero(3, 2);
  id.diagonal().setOnes();
  Matrix diag_x = Matrix::Zero(3, 2);
  diag_x.diagonal().setOnes();
  auto at1 = lrc::geodesic_l(FactorMatrix(id), FactorTangent(diag_x), 1.0);
  CHECK(at1.entries()(0, 0) == doctest::Approx(std::exp(1.0)));
  CHECK(at1.entries()(1, 1) == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("geodesic_l: complete for large |t| on scaled random data") {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 100; ++trial) {
    auto n = random_factor(5, 3, gen);
    auto x = random_tangent(n, gen, 0.01);
    for (double t : {-100.0, -1.0, 0.0, 1.0, 100.0}) {
      auto g = lrc::geodesic_l(n, x, t);  // constructor revalidates invariants
      CHECK(g.entries().allFinite());
    }
  }
}

TEST_CASE("log_l: pinned values") {
  auto n = np_factor();
  auto x0 = lrc::log_l(n, n);
  CHECK(x0.entries().norm() == 0.0);

  auto x = lrc::log_l(n, nq_factor());
  Matrix expected(3, 2);
  expected << 0, 0,
              0, 0,
             -4, -3;
  CHECK((x.entries() - expected).norm() == 0.0);
}

TEST_CASE("exp/log round trips on random pairs") {
  std::mt19937_64 gen(222);
  for (int trial = 0; trial < 500; ++trial) {
    auto n = random_factor(6, 3, gen);
    auto k = random_factor(6, 3, gen);
    auto x = random_tangent(n, gen);

    auto back = lrc::exp_l(n, lrc::log_l(n, k));
    CHECK((back.entries() - k.entries()).norm() <= 1e-9 * (1.0 + k.entries().norm()));

    auto xt = lrc::log_l(n, lrc::exp_l(n, x));
    CHECK((xt.entries() - x.entries()).norm() <= 1e-9 * (1.0 + x.entries().norm()));
  }
}

TEST_CASE("distance_l: pinned values and metric identities") {
  auto n = np_factor();
  CHECK(lrc::distance_l(n, n) == 0.0);
  CHECK(lrc::distance_l(n, nq_factor()) == doctest::Approx(5.0));

  Matrix scaled = n.entries();
  scaled(0, 0) *= std::exp(1.0);
  CHECK(lrc::distance_l(n, FactorMatrix(scaled)) == doctest::Approx(1.0));

  std::mt19937_64 gen(404);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_factor(5, 2, gen);
    auto b = random_factor(5, 2, gen);
    auto c = random_factor(5, 2, gen);
    const double dab = lrc::distance_l(a, b);
    CHECK(dab == lrc::distance_l(b, a));
    CHECK(dab <= lrc::distance_l(a, c) + lrc::distance_l(c, b) + 1e-12);

    auto x = lrc::log_l(a, b);
    CHECK(dab == doctest::Approx(std::sqrt(lrc::metric_l(a, x, x))).epsilon(1e-12));
    // flat chart: geodesic distance is the Euclidean distance of coordinates
    CHECK(dab == doctest::Approx((lrc::chart(a) - lrc::chart(b)).norm()).epsilon(1e-12));
  }
}

TEST_CASE("chart: fixed ordering and round trip") {
  Matrix nm(3, 2);
  nm << std::exp(1.0), 0,
        1, std::exp(1.0),
        2, 3;
  Vector coords = lrc::chart(FactorMatrix(nm));
  REQUIRE(coords.size() == 5);
  Vector expected(5);
  expected << 1, 1, 2, 1, 3;  // column-major: (11),(21),(31),(22),(32)
  CHECK((coords - expected).norm() <= 1e-14);

  auto back = lrc::chart_inverse(coords, 3, 2);
  CHECK((back.entries() - nm).norm() <= 1e-12 * (1.0 + nm.norm()));

  auto mock_id = lrc::chart_inverse(Vector::Zero(5), 3, 2);
  Matrix id = Matrix::Zero(3, 2);
  id.diagonal().setOnes();
  CHECK((mock_id.entries() - id).norm() == 0.0);

  CHECK_THROWS_AS(lrc::chart_inverse(Vector::Zero(4), 3, 2), lrc::ShapeError);
}

TEST_CASE("group operations: pinned value and axioms") {
  Matrix a(3, 2);
  a << 2, 0,
       1, 3,
       1, 1;
  Matrix b(3, 2);
  b << 1, 0,
       2, 1,
       3, 2;
  auto ab = lrc::group_op(FactorMatrix(a), FactorMatrix(b));
  Matrix expected(3, 2);
  expected << 2, 0,
              3, 3,
              4, 3;
  CHECK((ab.entries() - expected).norm() == 0.0);

  std::mt19937_64 gen(17);
  auto id = lrc::group_identity(4, 2);
  for (int trial = 0; trial < 100; ++trial) {
    auto x = random_factor(4, 2, gen);
    auto y = random_factor(4, 2, gen);
    auto z = random_factor(4, 2, gen);
    CHECK((lrc::group_op(x, id).entries() - x.entries()).norm() == 0.0);
    auto xinv = lrc::group_inverse(x);
    CHECK((lrc::group_op(x, xinv).entries() - id.entries()).norm() <= 1e-12);
    CHECK((lrc::group_op(x, y).entries() - lrc::group_op(y, x).entries()).norm() <= 1e-12);
    auto left = lrc::group_op(lrc::group_op(x, y), z);
    auto right = lrc::group_op(x, lrc::group_op(y, z));
    CHECK((left.entries() - right.entries()).norm() <=
          1e-12 * (1.0 + left.entries().norm()));
  }
}

TEST_CASE("transport_l: pinned values, isometry, path independence") {
  auto n = np_factor();
  Matrix xm(3, 2);
  xm << 1, 0,
        1, 0,
        1, 1;
  FactorTangent x(xm);

  auto same = lrc::transport_l(n, n, x);
  CHECK((same.entries() - xm).norm() == 0.0);

  auto zero = lrc::transport_l(n, nq_factor(), FactorTangent::zero(3, 2));
  CHECK(zero.entries().norm() == 0.0);

  // equal mock diagonals: the transported tangent is unchanged
  auto moved = lrc::transport_l(n, nq_factor(), x);
  CHECK((moved.entries() - xm).norm() == 0.0);

  std::mt19937_64 gen(88);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_factor(5, 3, gen);
    auto b = random_factor(5, 3, gen);
    auto c = random_factor(5, 3, gen);
    auto v = random_tangent(a, gen);
    auto vb = lrc::transport_l(a, b, v);
    const double before = lrc::metric_l(a, v, v);
    const double after = lrc::metric_l(b, vb, vb);
    CHECK(std::abs(before - after) <= 1e-10 * (1.0 + std::abs(before)));

    auto two_hop = lrc::transport_l(b, c, vb);
    auto direct = lrc::transport_l(a, c, v);
    CHECK((two_hop.entries() - direct.entries()).norm() <=
          1e-10 * (1.0 + direct.entries().norm()));
  }
}

TEST_CASE("metric_l: bi-invariance under the group action") {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 200; ++trial) {
    auto n = random_factor(5, 2, gen);
    auto k = random_factor(5, 2, gen);
    auto x = random_tangent(n, gen);
    auto y = random_tangent(n, gen);
    auto kn = lrc::group_op(k, n);
    // the differential of K (+) . scales mock diagonals by K_ii, which is
    // exactly the factor transport from N to K (+) N
    auto dx = lrc::transport_l(n, kn, x);
    auto dy = lrc::transport_l(n, kn, y);
    const double lhs = lrc::metric_l(kn, dx, dy);
    const double rhs = lrc::metric_l(n, x, y);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("frechet_mean_l: single input and geodesic midpoint") {
  std::mt19937_64 gen(313);
  auto a = random_factor(5, 3, gen);
  auto b = random_factor(5, 3, gen);

  auto only = lrc::frechet_mean_l({a});
  CHECK((only.entries() - a.entries()).norm() == 0.0);

  auto mean = lrc::frechet_mean_l({a, b});
  auto midpoint = lrc::geodesic_l(a, lrc::log_l(a, b), 0.5);
  CHECK((mean.entries() - midpoint.entries()).norm() <=
        1e-10 * (1.0 + midpoint.entries().norm()));
}

TEST_CASE("frechet_mean_l: matches gradient descent in chart coordinates") {
  std::mt19937_64 gen(2718);
  std::vector<FactorMatrix> pts;
  for (int i = 0; i < 3; ++i) pts.push_back(random_factor(4, 2, gen));
  std::vector<double> weights{0.2, 0.3, 0.5};

  for (bool weighted : {false, true}) {
    std::vector<double> w = weighted ? weights : std::vector<double>{};
    auto closed_form = weighted ? lrc::frechet_mean_l(pts, w) : lrc::frechet_mean_l(pts);

    // black-box descent on F(z) = sum_l w_l d(z, N_l)^2 over chart coordinates
    auto objective = [&](const Vector& z) {
      auto cand = lrc::chart_inverse(z, 4, 2);
      double f = 0.0;
      for (size_t l = 0; l < pts.size(); ++l) {
        const double d = lrc::distance_l(cand, pts[l]);
        f += (weighted ? weights[l] : 1.0 / 3.0) * d * d;
      }
      return f;
    };
    Vector z = lrc::chart(pts[0]);
    const double h = 1e-6;
    for (int iter = 0; iter < 400; ++iter) {
      Vector grad(z.size());
      for (Eigen::Index i = 0; i < z.size(); ++i) {
        Vector zp = z, zm = z;
        zp(i) += h;
        zm(i) -= h;
        grad(i) = (objective(zp) - objective(zm)) / (2.0 * h);
      }
      z -= 0.2 * grad;
    }
    auto descent = lrc::chart_inverse(z, 4, 2);
    CHECK((descent.entries() - closed_form.entries()).norm() <=
          1e-6 * (1.0 + closed_form.entries().norm()));
  }
}

TEST_CASE("frechet_mean_l: permutation invariance") {
  std::mt19937_64 gen(515);
  std::vector<FactorMatrix> pts;
  for (int i = 0; i < 6; ++i) pts.push_back(random_factor(5, 2, gen));
  auto base = lrc::frechet_mean_l(pts);
  std::vector<FactorMatrix> shuffled = pts;
  std::shuffle(shuffled.begin(), shuffled.end(), gen);
  auto other = lrc::frechet_mean_l(shuffled);
  CHECK((base.entries() - other.entries()).norm() <=
        1e-10 * (1.0 + base.entries().norm()));
}

TEST_CASE("frechet_mean_l: weight validation") {
  std::mt19937_64 gen(616);
  auto a = random_factor(4, 2, gen);
  auto b = random_factor(4, 2, gen);

  CHECK_THROWS_AS(lrc::frechet_mean_l({}), lrc::InvalidInput);
  CHECK_THROWS_AS(lrc::frechet_mean_l({a, b}, {0.5, 0.6}), lrc::InvalidInput);
  CHECK_THROWS_AS(lrc::frechet_mean_l({a, b}, {-0.1, 1.1}), lrc::InvalidInput);
  CHECK_THROWS_AS(lrc::frechet_mean_l({a, b}, {0.5}), lrc::InvalidInput);

  auto degenerate = lrc::frechet_mean_l({a}, {1.0});
  CHECK((degenerate.entries() - a.entries()).norm() == 0.0);
}

}  // TEST_SUITE("factor-geometry")
