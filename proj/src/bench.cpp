#include "lrc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <thread>
#include <utility>

#include "json.hpp"

namespace lrc {
namespace {

Matrix head_basis(int n) {
  Matrix w = Matrix::Zero(n, 3);
  w.col(0).head(4) << 0.5, 0.5, 0.5, 0.5;
  w.col(1).head(4) << -0.5, -0.5, 0.5, 0.5;
  w.col(2).head(4) << 0.5, -0.5, 0.5, -0.5;
  return w;
}

const std::vector<std::string>& allowed_methods(const std::string& scenario) {
  static const std::vector<std::string> noisy{"lrc", "dpca", "eigv"};
  static const std::vector<std::string> vectors{"lrc", "dpca", "eigv", "fpca"};
  return scenario == "noisy-matrix" ? noisy : vectors;
}

}  // namespace

SigmaTruth generate_sigma(int n, std::mt19937_64& gen) {
  if (n < 4) throw ShapeError("need n >= 4 to hold the fixed basis heads");
  std::normal_distribution<double> nd;
  double l1 = 0, l2 = 0, l3 = 0;
  do {
    l1 = 10.0 + nd(gen);
    l2 = 5.0 + nd(gen);
    l3 = 2.5 + nd(gen);
  } while (!(l1 > l2 && l2 > l3 && l3 > 0.0));

  Matrix w = head_basis(n);
  Vector lambda(3);
  lambda << l1, l2, l3;
  Matrix sigma = w * lambda.asDiagonal() * w.transpose();
  sigma = 0.5 * (sigma + Matrix(sigma.transpose()));
  return {std::move(sigma), std::move(w)};
}

Matrix perturb_matrix(const Matrix& sigma, double noise, std::mt19937_64& gen) {
  if (sigma.rows() != sigma.cols()) throw ShapeError("perturbation needs a square matrix");
  require_finite(sigma, "perturbation input");
  if (noise < 0.0) throw InvalidInput("noise level must be nonnegative");
  if (noise == 0.0) return sigma;

  std::normal_distribution<double> nd(0.0, noise);
  Matrix e(sigma.rows(), sigma.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) e(i, j) = nd(gen);
  return sigma + 0.5 * (e + Matrix(e.transpose()));
}

Matrix sample_batch(const Matrix& sigma1, int l, std::mt19937_64& gen) {
  if (l < 1) throw InvalidInput("need at least one sample");
  if (sigma1.rows() != sigma1.cols()) throw ShapeError("covariance must be square");
  require_finite(sigma1, "sampling covariance");

  Eigen::LLT<Matrix> llt(sigma1);
  if (llt.info() != Eigen::Success)
    throw NonPsd("sampling covariance is not positive definite");
  const Matrix lfac = llt.matrixL();

  std::normal_distribution<double> nd;
  const Eigen::Index n = sigma1.rows();
  Matrix batch(l, n);
  Vector z(n);
  for (int r = 0; r < l; ++r) {
    for (Eigen::Index j = 0; j < n; ++j) z(j) = nd(gen);
    batch.row(r) = (lfac * z).transpose();
  }
  return batch;
}

void validate(ExperimentConfig& config) {
  if (config.scenario != "noisy-matrix" && config.scenario != "random-vector")
    throw InvalidInput("scenario must be noisy-matrix or random-vector");
  if (config.k != 3)
    throw InvalidInput("the synthetic generator fixes the rank at 3");
  if (config.n <= config.k) throw InvalidInput("need n > k");
  if (config.m < 1) throw InvalidInput("need at least one site");
  if (!(config.sigma > 0.0)) throw InvalidInput("noise level must be positive");
  if (config.scenario == "random-vector" && config.l < 1)
    throw InvalidInput("need at least one sample per site");
  if (config.replicates < 1) throw InvalidInput("need at least one replicate");
  if (config.threads < 1) throw InvalidInput("need at least one thread");

  const auto& allowed = allowed_methods(config.scenario);
  if (config.methods.empty()) config.methods = allowed;
  for (std::size_t i = 0; i < config.methods.size(); ++i) {
    const auto& m = config.methods[i];
    if (std::find(allowed.begin(), allowed.end(), m) == allowed.end())
      throw InvalidInput("method '" + m + "' is not available in scenario " +
                         config.scenario);
    if (std::find(config.methods.begin(), config.methods.begin() + i, m) !=
        config.methods.begin() + i)
      throw InvalidInput("method '" + m + "' listed twice");
  }
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
  ExperimentConfig cfg = config;
  validate(cfg);
  const int reps = cfg.replicates;
  const auto& methods = cfg.methods;
  const bool vector_scenario = cfg.scenario == "random-vector";

  std::vector<std::vector<double>> errors(methods.size(), std::vector<double>(reps));
  std::vector<std::vector<double>> times(methods.size(), std::vector<double>(reps));

  const RngStream root(cfg.seed);
  auto run_replicate = [&](int r) {
    const RngStream rep = root.child(std::uint64_t(r));
    auto sigma_engine = rep.child(0).engine();
    const SigmaTruth truth = generate_sigma(cfg.n, sigma_engine);
    const RngStream sites = rep.child(1);

    std::vector<Matrix> mats;
    std::vector<Matrix> batches;
    mats.reserve(cfg.m);
    if (vector_scenario) {
      batches.reserve(cfg.m);
      const Matrix sigma1 =
          truth.sigma + cfg.sigma * cfg.sigma * Matrix::Identity(cfg.n, cfg.n);
      for (int i = 0; i < cfg.m; ++i) {
        auto site_engine = sites.child(std::uint64_t(i)).engine();
        Matrix x = sample_batch(sigma1, cfg.l, site_engine);
        Matrix cov = x.transpose() * x / double(cfg.l);
        mats.push_back(0.5 * (cov + Matrix(cov.transpose())));
        batches.push_back(std::move(x));
      }
    } else {
      for (int i = 0; i < cfg.m; ++i) {
        auto site_engine = sites.child(std::uint64_t(i)).engine();
        mats.push_back(perturb_matrix(truth.sigma, cfg.sigma, site_engine));
      }
    }

    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      const auto start = std::chrono::steady_clock::now();
      EigenspaceEstimate est;
      if (methods[mi] == "lrc") est = lrc_estimate(mats, cfg.k);
      else if (methods[mi] == "dpca") est = dpca_estimate(mats, cfg.k);
      else if (methods[mi] == "eigv") est = eigv_ave_estimate(mats, cfg.k);
      else est = fpca_estimate(batches, cfg.k);
      times[mi][r] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
              .count();
      errors[mi][r] = sin_theta(est.basis, truth.basis, cfg.norm);
    }
  };

  if (cfg.threads == 1 || reps == 1) {
    for (int r = 0; r < reps; ++r) run_replicate(r);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      for (int r = next.fetch_add(1); r < reps; r = next.fetch_add(1)) {
        try {
          run_replicate(r);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    const int count = std::min(cfg.threads, reps);
    pool.reserve(count);
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<ResultRow> rows;
  rows.reserve(methods.size());
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    ResultRow row;
    row.scenario = cfg.scenario;
    row.n = cfg.n;
    row.k = cfg.k;
    row.m = cfg.m;
    row.sigma = cfg.sigma;
    row.l = vector_scenario ? cfg.l : 0;
    row.method = methods[mi];
    row.replicates = reps;
    row.seed = cfg.seed;
    row.raw_errors = errors[mi];

    double mean = 0.0;
    for (double e : errors[mi]) mean += e;
    mean /= reps;
    double ss = 0.0;
    for (double e : errors[mi]) ss += (e - mean) * (e - mean);
    row.mean_error = mean;
    row.sd_error = reps > 1 ? std::sqrt(ss / (reps - 1)) : 0.0;

    if (cfg.record_timing) {
      double tmean = 0.0;
      for (double t : times[mi]) tmean += t;
      row.mean_time_s = tmean / reps;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "scenario,n,k,m,sigma,l,method,mean_error,sd_error,mean_time_s,"
         "replicates,seed\n";
  out << std::setprecision(12);
  for (const auto& r : rows) {
    out << r.scenario << ',' << r.n << ',' << r.k << ',' << r.m << ',' << r.sigma
        << ',' << r.l << ',' << r.method << ',' << r.mean_error << ','
        << r.sd_error << ',' << r.mean_time_s << ',' << r.replicates << ','
        << r.seed << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<ResultRow>& rows) {
  nlohmann::json doc;
  doc["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    doc["rows"].push_back({{"scenario", r.scenario},
                           {"n", r.n},
                           {"k", r.k},
                           {"m", r.m},
                           {"sigma", r.sigma},
                           {"l", r.l},
                           {"method", r.method},
                           {"mean_error", r.mean_error},
                           {"sd_error", r.sd_error},
                           {"mean_time_s", r.mean_time_s},
                           {"replicates", r.replicates},
                           {"seed", r.seed},
                           {"raw_errors", r.raw_errors}});
  }
  out << doc.dump(2) << '\n';
}

}  // namespace lrc
