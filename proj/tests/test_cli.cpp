#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "lrc/cli.hpp"
#include "lrc/matrix_io.hpp"

using lrc::Matrix;

namespace {

int call_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"bench"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return lrc::run_cli(int(argv.size()), argv.data());
}

struct CoutCapture {
  std::ostringstream buf;
  std::streambuf* saved;
  CoutCapture() : saved(std::cout.rdbuf(buf.rdbuf())) {}
  ~CoutCapture() { std::cout.rdbuf(saved); }
};

std::filesystem::path temp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "lrc-cli-tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

Matrix worked_p() {
  Matrix m(3, 3);
  m << 1, 2, 3,
       2, 5, 8,
       3, 8, 13;
  return m;
}

Matrix worked_q() {
  Matrix m(3, 3);
  m << 1, 2, -1,
       2, 5, -3,
      -1, -3, 2;
  return m;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("geo factorize: explicit and inferred rank") {
  auto in = temp_file("factorize-in.txt");
  auto out = temp_file("factorize-out.txt");
  lrc::write_matrix_file(in, worked_p());

  REQUIRE(call_cli({"geo", "factorize", "--in", in.string(), "--p", "2", "--out",
                    out.string()}) == 0);
  Matrix factor = lrc::read_matrix_file(out);
  Matrix expected(3, 2);
  expected << 1, 0,
              2, 1,
              3, 2;
  CHECK((factor - expected).norm() <= 1e-12);

  REQUIRE(call_cli({"geo", "factorize", "--in", in.string(), "--out",
                    out.string()}) == 0);
  CHECK((lrc::read_matrix_file(out) - expected).norm() <= 1e-12);
}

TEST_CASE("geo distance: worked pair prints 5") {
  auto p = temp_file("dist-p.txt");
  auto q = temp_file("dist-q.txt");
  lrc::write_matrix_file(p, worked_p());
  lrc::write_matrix_file(q, worked_q());

  CoutCapture capture;
  REQUIRE(call_cli({"geo", "distance", "--from", p.string(), "--to", q.string()}) ==
          0);
  CHECK(std::stod(capture.buf.str()) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("geo geodesic: endpoints recovered from files") {
  auto p = temp_file("geo-p.txt");
  auto q = temp_file("geo-q.txt");
  auto out = temp_file("geo-out.txt");
  lrc::write_matrix_file(p, worked_p());
  lrc::write_matrix_file(q, worked_q());

  REQUIRE(call_cli({"geo", "geodesic", "--from", p.string(), "--to", q.string(),
                    "--t", "1", "--out", out.string()}) == 0);
  CHECK((lrc::read_matrix_file(out) - worked_q()).norm() <= 1e-9);

  REQUIRE(call_cli({"geo", "geodesic", "--from", p.string(), "--to", q.string(),
                    "--t", "0", "--out", out.string()}) == 0);
  CHECK((lrc::read_matrix_file(out) - worked_p()).norm() <= 1e-9);
}

TEST_CASE("geo transport: worked example through files") {
  auto p = temp_file("tr-p.txt");
  auto q = temp_file("tr-q.txt");
  auto w = temp_file("tr-w.txt");
  auto out = temp_file("tr-out.txt");
  lrc::write_matrix_file(p, worked_p());
  lrc::write_matrix_file(q, worked_q());
  Matrix tangent(3, 3);
  tangent << 2, 3, 4,
             3, 4, 6,
             4, 6, 10;
  lrc::write_matrix_file(w, tangent);

  REQUIRE(call_cli({"geo", "transport", "--from", p.string(), "--to", q.string(),
                    "--tangent", w.string(), "--out", out.string()}) == 0);
  Matrix expected(3, 3);
  expected << 2, 3, 0,
              3, 4, 2,
              0, 2, -4;
  CHECK((lrc::read_matrix_file(out) - expected).norm() <= 1e-9);
}

TEST_CASE("geo mean: diagonal pair with and without weights") {
  auto a = temp_file("mean-a.txt");
  auto b = temp_file("mean-b.txt");
  auto out = temp_file("mean-out.txt");
  Matrix ma = Matrix::Zero(3, 3);
  ma.diagonal() << 4, 9, 0;
  Matrix mb = Matrix::Zero(3, 3);
  mb.diagonal() << 9, 4, 0;
  lrc::write_matrix_file(a, ma);
  lrc::write_matrix_file(b, mb);

  Matrix expected = Matrix::Zero(3, 3);
  expected.diagonal() << 6, 6, 0;

  REQUIRE(call_cli({"geo", "mean", "--inputs", a.string() + "," + b.string(),
                    "--out", out.string()}) == 0);
  CHECK((lrc::read_matrix_file(out) - expected).norm() <= 1e-12);

  REQUIRE(call_cli({"geo", "mean", "--inputs", a.string() + "," + b.string(),
                    "--weights", "0.5,0.5", "--out", out.string()}) == 0);
  CHECK((lrc::read_matrix_file(out) - expected).norm() <= 1e-12);
}

TEST_CASE("run: CSV and JSON outputs, bit-identical reruns") {
  auto csv1 = temp_file("run1.csv");
  auto csv2 = temp_file("run2.csv");
  auto json = temp_file("run.json");
  std::vector<std::string> base{
      "run",  "--scenario", "noisy-matrix", "--n",    "6",          "--m",
      "2",    "--sigma",    "0.2",          "--k",    "3",          "--replicates",
      "2",    "--seed",     "5",            "--no-timing"};

  auto first = base;
  first.insert(first.end(), {"--out", csv1.string(), "--json", json.string()});
  REQUIRE(call_cli(first) == 0);
  auto second = base;
  second.insert(second.end(), {"--out", csv2.string()});
  REQUIRE(call_cli(second) == 0);

  auto lines = read_lines(csv1);
  REQUIRE(lines.size() == 4);  // header + lrc,dpca,eigv
  CHECK(lines[0] ==
        "scenario,n,k,m,sigma,l,method,mean_error,sd_error,mean_time_s,"
        "replicates,seed");
  CHECK(lines[1].find("noisy-matrix,6,3,2,0.2,0,lrc,") == 0);

  std::ifstream f1(csv1), f2(csv2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());

  std::ifstream jf(json);
  auto doc = nlohmann::json::parse(jf);
  REQUIRE(doc["rows"].size() == 3);
  CHECK(doc["rows"][0]["raw_errors"].size() == 2);
  CHECK(doc["rows"][0]["mean_time_s"] == 0.0);
}

TEST_CASE("run: random-vector scenario includes fpca") {
  auto csv = temp_file("run-vec.csv");
  REQUIRE(call_cli({"run", "--scenario", "random-vector", "--n", "6", "--m", "2",
                    "--sigma", "0.1", "--l", "40", "--replicates", "2", "--seed",
                    "3", "--no-timing", "--out", csv.string()}) == 0);
  auto lines = read_lines(csv);
  REQUIRE(lines.size() == 5);
  CHECK(lines[4].find(",fpca,") != std::string::npos);
}

TEST_CASE("timing: rows per size with positive wall times") {
  auto csv = temp_file("timing.csv");
  REQUIRE(call_cli({"timing", "--n", "6,8", "--m", "2", "--replicates", "2",
                    "--seed", "1", "--out", csv.string()}) == 0);
  auto lines = read_lines(csv);
  REQUIRE(lines.size() == 7);  // header + 2 sizes x 3 methods
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::stringstream row(lines[i]);
    std::string field;
    for (int f = 0; f < 10; ++f) std::getline(row, field, ',');
    CHECK(std::stod(field) > 0.0);
  }
}

TEST_CASE("failures exit nonzero without throwing") {
  CHECK(call_cli({"explode"}) != 0);
  CHECK(call_cli({"geo", "factorize"}) != 0);  // missing --in
  CHECK(call_cli({"run", "--k", "2", "--out", temp_file("never.csv").string()}) !=
        0);
  CHECK(call_cli({"geo", "distance", "--from", "no-such-file.txt", "--to",
                  "also-missing.txt"}) != 0);

  // headerless file parses as 1x2 and must be rejected as non-square
  const auto bad = temp_file("headerless.txt");
  std::ofstream(bad) << "1 2 3\n2 5 8\n3 8 13\n";
  CHECK(call_cli({"geo", "factorize", "--in", bad.string()}) != 0);
}

}  // TEST_SUITE("cli")
