#include "lrc/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lrc/bench.hpp"
#include "lrc/matrix_io.hpp"
#include "lrc/psd_geometry.hpp"

namespace lrc {
namespace {

int infer_rank(const Matrix& m) {
  const Matrix s = 0.5 * (m + Matrix(m.transpose()));
  return spectrum_rank(sym_eig(s).values).positive;
}

RestrictedPsd load_point(const std::string& path, int p) {
  Matrix m = read_matrix_file(path);
  if (m.rows() != m.cols()) {
    throw InvalidInput(path + ": expected a square matrix, got " +
                       std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                       " (files start with a 'rows cols' header line)");
  }
  const int rank = p > 0 ? p : infer_rank(m);
  return RestrictedPsd(std::move(m), rank);
}

void emit_matrix(const Matrix& m, const std::string& out) {
  if (out.empty())
    write_matrix(std::cout, m);
  else
    write_matrix_file(out, m);
}

void emit_rows(const std::vector<ResultRow>& rows, const std::string& csv_path,
               const std::string& json_path) {
  if (csv_path.empty()) {
    write_csv(std::cout, rows);
  } else {
    std::ofstream out(csv_path);
    if (!out) throw InvalidInput("cannot open output file " + csv_path);
    write_csv(out, rows);
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw InvalidInput("cannot open output file " + json_path);
    write_json(out, rows);
  }
}

struct RunOptions {
  ExperimentConfig config;
  std::string norm = "spectral";
  bool no_timing = false;
  std::string out;
  std::string json;
};

struct TimingOptions {
  std::vector<int> sizes{100, 200, 500};
  int m = 100;
  double sigma = 0.3;
  int replicates = 10;
  std::uint64_t seed = 0;
  std::string out;
};

void add_run_command(CLI::App& app, RunOptions& opt) {
  auto* run = app.add_subcommand("run", "Run a replicated estimation experiment");
  run->add_option("--scenario", opt.config.scenario, "Data-generation scenario")
      ->check(CLI::IsMember({"noisy-matrix", "random-vector"}))
      ->capture_default_str();
  run->add_option("--n", opt.config.n, "Matrix dimension")->capture_default_str();
  run->add_option("--k", opt.config.k, "Eigenspace rank")->capture_default_str();
  run->add_option("--m", opt.config.m, "Number of sites")->capture_default_str();
  run->add_option("--sigma", opt.config.sigma, "Noise level")->capture_default_str();
  run->add_option("--l", opt.config.l, "Samples per site (random-vector)")
      ->capture_default_str();
  run->add_option("--replicates", opt.config.replicates, "Replicate count")
      ->capture_default_str();
  run->add_option("--seed", opt.config.seed, "Master seed")->capture_default_str();
  run->add_option("--methods", opt.config.methods,
                  "Comma-separated subset of lrc,dpca,eigv,fpca")
      ->delimiter(',');
  run->add_option("--norm", opt.norm, "Norm for the subspace distance")
      ->check(CLI::IsMember({"spectral", "frobenius"}))
      ->capture_default_str();
  run->add_option("--threads", opt.config.threads, "Worker threads over replicates")
      ->capture_default_str();
  run->add_flag("--no-timing", opt.no_timing,
                "Zero the timing column for bit-identical output");
  run->add_option("--out", opt.out, "CSV output path (default: stdout)");
  run->add_option("--json", opt.json, "Also write a JSON mirror with raw errors");

  run->callback([&opt] {
    opt.config.norm =
        opt.norm == "frobenius" ? SubspaceNorm::frobenius : SubspaceNorm::spectral;
    opt.config.record_timing = !opt.no_timing;
    emit_rows(run_experiment(opt.config), opt.out, opt.json);
  });
}

void add_timing_command(CLI::App& app, TimingOptions& opt) {
  auto* timing =
      app.add_subcommand("timing", "Wall-time comparison across matrix sizes");
  timing->add_option("--n", opt.sizes, "Comma-separated matrix sizes")
      ->delimiter(',');
  timing->add_option("--m", opt.m, "Number of sites")->capture_default_str();
  timing->add_option("--sigma", opt.sigma, "Noise level")->capture_default_str();
  timing->add_option("--replicates", opt.replicates, "Replicates per size")
      ->capture_default_str();
  timing->add_option("--seed", opt.seed, "Master seed")->capture_default_str();
  timing->add_option("--out", opt.out, "CSV output path (default: stdout)");

  timing->callback([&opt] {
    std::vector<ResultRow> rows;
    for (int n : opt.sizes) {
      ExperimentConfig cfg;
      cfg.scenario = "noisy-matrix";
      cfg.n = n;
      cfg.m = opt.m;
      cfg.sigma = opt.sigma;
      cfg.replicates = opt.replicates;
      cfg.seed = opt.seed;
      auto batch = run_experiment(cfg);
      rows.insert(rows.end(), batch.begin(), batch.end());
    }
    emit_rows(rows, opt.out, "");
  });
}

struct GeoOptions {
  std::string in, from, to, tangent, out;
  std::vector<std::string> inputs;
  std::vector<double> weights;
  int p = 0;  // 0 -> infer from the spectrum
  double t = 0.0;
};

void add_geo_commands(CLI::App& app, GeoOptions& opt) {
  auto* geo = app.add_subcommand("geo", "Geometry operations on matrix files");
  geo->require_subcommand(1);

  auto* factorize = geo->add_subcommand("factorize", "Reduced Cholesky factor");
  factorize->add_option("--in", opt.in, "Input matrix file")->required();
  factorize->add_option("--p", opt.p, "Rank (default: inferred)");
  factorize->add_option("--out", opt.out, "Output path (default: stdout)");
  factorize->callback([&opt] {
    emit_matrix(load_point(opt.in, opt.p).factor().entries(), opt.out);
  });

  auto* geodesic = geo->add_subcommand("geodesic", "Point along the connecting geodesic");
  geodesic->add_option("--from", opt.from, "Start matrix file")->required();
  geodesic->add_option("--to", opt.to, "End matrix file")->required();
  geodesic->add_option("--t", opt.t, "Curve parameter")->required();
  geodesic->add_option("--p", opt.p, "Rank (default: inferred from start)");
  geodesic->add_option("--out", opt.out, "Output path (default: stdout)");
  geodesic->callback([&opt] {
    auto a = load_point(opt.from, opt.p);
    auto b = load_point(opt.to, int(a.p()));
    emit_matrix(geodesic_s(a, log_s(a, b), opt.t).entries(), opt.out);
  });

  auto* mean = geo->add_subcommand("mean", "Weighted Frechet mean");
  mean->add_option("--inputs", opt.inputs, "Comma-separated matrix files")
      ->delimiter(',')
      ->required();
  mean->add_option("--weights", opt.weights, "Comma-separated weights")
      ->delimiter(',');
  mean->add_option("--p", opt.p, "Rank (default: inferred from first input)");
  mean->add_option("--out", opt.out, "Output path (default: stdout)");
  mean->callback([&opt] {
    std::vector<RestrictedPsd> points;
    points.reserve(opt.inputs.size());
    for (const auto& path : opt.inputs) {
      const int rank = points.empty() ? opt.p : int(points.front().p());
      points.push_back(load_point(path, rank));
    }
    emit_matrix(frechet_mean_s(points, opt.weights).entries(), opt.out);
  });

  auto* transport = geo->add_subcommand("transport", "Parallel transport of a tangent");
  transport->add_option("--from", opt.from, "Start matrix file")->required();
  transport->add_option("--to", opt.to, "End matrix file")->required();
  transport->add_option("--tangent", opt.tangent, "Tangent matrix file")->required();
  transport->add_option("--p", opt.p, "Rank (default: inferred from start)");
  transport->add_option("--out", opt.out, "Output path (default: stdout)");
  transport->callback([&opt] {
    auto a = load_point(opt.from, opt.p);
    auto b = load_point(opt.to, int(a.p()));
    auto w = tangent_at(a, read_matrix_file(opt.tangent));
    emit_matrix(parallel_transport_s(a, b, w).entries(), opt.out);
  });

  auto* distance = geo->add_subcommand("distance", "Geodesic distance");
  distance->add_option("--from", opt.from, "First matrix file")->required();
  distance->add_option("--to", opt.to, "Second matrix file")->required();
  distance->add_option("--p", opt.p, "Rank (default: inferred from first)");
  distance->callback([&opt] {
    auto a = load_point(opt.from, opt.p);
    auto b = load_point(opt.to, int(a.p()));
    std::cout << std::setprecision(17) << distance_s(a, b) << '\n';
  });
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Restricted-rank PSD geometry and eigenspace estimation bench"};
  app.require_subcommand(1);

  RunOptions run_opt;
  TimingOptions timing_opt;
  GeoOptions geo_opt;
  add_run_command(app, run_opt);
  add_timing_command(app, timing_opt);
  add_geo_commands(app, geo_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace lrc
