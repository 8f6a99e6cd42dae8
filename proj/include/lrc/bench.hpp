#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lrc/estimators.hpp"
#include "lrc/rng.hpp"

namespace lrc {

// Ground-truth covariance for the synthetic studies: three fixed orthonormal
// half-vector heads padded with zeros, eigenvalues drawn from N(10,1),
// N(5,1), N(2.5,1) and jointly redrawn until ordered and positive.
struct SigmaTruth {
  Matrix sigma;  // n x n, rank 3
  Matrix basis;  // n x 3, the true principal subspace
};

SigmaTruth generate_sigma(int n, std::mt19937_64& gen);

// Symmetric additive noise: sigma + (E + E^T)/2 with E_ij ~ N(0, noise^2).
Matrix perturb_matrix(const Matrix& sigma, double noise, std::mt19937_64& gen);

// l rows sampled i.i.d. from N(0, sigma1), sigma1 positive definite.
Matrix sample_batch(const Matrix& sigma1, int l, std::mt19937_64& gen);

struct ExperimentConfig {
  std::string scenario = "noisy-matrix";  // or "random-vector"
  int n = 50;
  int k = 3;
  int m = 100;
  double sigma = 0.3;
  int l = 50;  // per-site samples, random-vector scenario only
  int replicates = 100;
  std::uint64_t seed = 0;
  std::vector<std::string> methods;  // empty -> every method the scenario supports
  SubspaceNorm norm = SubspaceNorm::spectral;
  int threads = 1;
  bool record_timing = true;
};

// Throws InvalidInput on out-of-range fields; fills in default methods.
void validate(ExperimentConfig& config);

// One output row per method.
struct ResultRow {
  std::string scenario;
  int n = 0;
  int k = 0;
  int m = 0;
  double sigma = 0.0;
  int l = 0;
  std::string method;
  double mean_error = 0.0;
  double sd_error = 0.0;
  double mean_time_s = 0.0;
  int replicates = 0;
  std::uint64_t seed = 0;
  std::vector<double> raw_errors;  // per replicate, in replicate order
};

std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_json(std::ostream& out, const std::vector<ResultRow>& rows);

}  // namespace lrc
