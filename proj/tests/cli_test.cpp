#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "extremal/json_io.hpp"

using namespace extremal;
namespace fs = std::filesystem;

namespace {

const std::string cli = EXTREMAL_CLI_PATH;

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "extremal-cli-test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  std::string cmd = cli + " " + args + " > " + (work_dir() / "stdout.json").string() +
                    " 2> " + (work_dir() / "stderr.txt").string();
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

json stdout_json() { return load_json_file((work_dir() / "stdout.json").string()); }

std::string write_matrix(const char* name, const HermitianMatrix& m) {
  fs::path p = work_dir() / name;
  write_json_file(p.string(), matrix_to_json(m));
  return p.string();
}

std::string write_spec(const char* name, const Spectrahedron& c) {
  fs::path p = work_dir() / name;
  write_json_file(p.string(), spectrahedron_to_json(c));
  return p.string();
}

HermitianMatrix ones3() {
  return HermitianMatrix(Field::Real, RealMatrix(RealMatrix::Ones(3, 3)));
}

}  // namespace

TEST_CASE("usage and IO errors exit with code 1") {
  CHECK(run("no-such-command") == 1);
  CHECK(run("check-extreme") == 1);  // missing required inputs
  CHECK(run("check-extreme --point /nonexistent.json --spectrahedron /nonexistent.json") ==
        1);
  CHECK(run("--version") == 0);
}

TEST_CASE("check-extreme") {
  std::string spec3 = write_spec("e3.json", Spectrahedron::elliptope(3, Field::Real));
  std::string mat = write_matrix("ones3.json", ones3());
  REQUIRE(run("check-extreme --point " + mat + " --spectrahedron " + spec3) == 0);
  json out = stdout_json();
  CHECK(out["is_extreme"] == true);
  CHECK(out["rank_P"] == 1);
  CHECK(out["manifest"]["command"] == "check-extreme");

  std::string id = write_matrix("id3.json", HermitianMatrix::identity(Field::Real, 3));
  REQUIRE(run("check-extreme --point " + id + " --spectrahedron " + spec3) == 0);
  out = stdout_json();
  CHECK(out["is_extreme"] == false);
  CHECK(out["facial_dimension"] == 3);

  // infeasible point is a domain error
  std::string half =
      write_matrix("half.json", HermitianMatrix::identity(Field::Real, 3).scaled(0.5));
  CHECK(run("check-extreme --point " + half + " --spectrahedron " + spec3) == 2);
}

TEST_CASE("facial-dim and perturb") {
  std::string spec3 = write_spec("e3b.json", Spectrahedron::elliptope(3, Field::Real));
  std::string id = write_matrix("id3b.json", HermitianMatrix::identity(Field::Real, 3));

  REQUIRE(run("facial-dim --point " + id + " --spectrahedron " + spec3) == 0);
  CHECK(stdout_json()["facial_dimension"] == 3);

  fs::path out_path = work_dir() / "witness.json";
  REQUIRE(run("perturb --point " + id + " --spectrahedron " + spec3 + " --out " +
              out_path.string()) == 0);
  json w = load_json_file(out_path.string());
  REQUIRE(w["witness_found"] == true);
  CHECK(w["witness"]["norm_X"].get<double>() <= 0.5 + 1e-10);
  CHECK(w["witness"]["feasibility_plus"]["feasible"] == true);
  CHECK(w["witness"]["feasibility_minus"]["feasible"] == true);

  // H round-trips through the factorization command
  HermitianMatrix h = matrix_from_json(w["witness"]["H"]);
  std::string h_path = write_matrix("h.json", h);
  REQUIRE(run("douglas-factor --point " + id + " --perturbation " + h_path) == 0);
  CHECK(stdout_json()["reconstruction_error"].get<double>() <= 1e-8);

  // extreme input: no witness
  std::string ones = write_matrix("ones3b.json", ones3());
  REQUIRE(run("perturb --point " + ones + " --spectrahedron " + spec3) == 0);
  CHECK(stdout_json()["witness_found"] == false);
}

TEST_CASE("elliptope-check and hadamard-check") {
  std::string ones = write_matrix("ones3c.json", ones3());
  REQUIRE(run("elliptope-check --point " + ones + " --field real") == 0);
  CHECK(stdout_json()["is_extreme"] == true);

  REQUIRE(run("hadamard-check --point " + ones) == 0);
  json out = stdout_json();
  CHECK(out["rank_A"] == 1);
  CHECK(out["equality"] == true);

  // non-PSD input is a domain error
  RealMatrix neg = -RealMatrix::Identity(2, 2);
  std::string bad = write_matrix("neg.json", HermitianMatrix(Field::Real, neg));
  CHECK(run("hadamard-check --point " + bad) == 2);
  // so is a non-correlation input to the elliptope path
  CHECK(run("elliptope-check --point " + bad + " --field real") == 2);
}

TEST_CASE("bp-bound and random-correlation") {
  REQUIRE(run("bp-bound --constraints 4 --field complex") == 0);
  CHECK(stdout_json()["max_rank"] == 2);

  REQUIRE(run("bp-bound --constraints 3 --field real") == 0);
  CHECK(stdout_json()["max_rank"] == 2);

  fs::path out_path = work_dir() / "corr.json";
  REQUIRE(run("random-correlation --n 4 --rank 2 --seed 7 --out " + out_path.string()) ==
          0);
  json first = load_json_file(out_path.string());
  HermitianMatrix m = matrix_from_json(first["matrix"]);
  CHECK(m.dim() == 4);
  CHECK(m.entries()(0, 0) == Cplx(1.0));
  CHECK(first["rank"] == 2);

  // deterministic given the seed
  REQUIRE(run("random-correlation --n 4 --rank 2 --seed 7 --out " + out_path.string()) ==
          0);
  CHECK(first["matrix"] == load_json_file(out_path.string())["matrix"]);
}

TEST_CASE("solvers and oracle-compare through the CLI") {
  std::string spec2 = write_spec("e2.json", Spectrahedron::elliptope(2, Field::Real));
  REQUIRE(run("solve-lambda1 --spectrahedron " + spec2 +
              " --rank-bound 1 --restarts 4 --seed 1") == 0);
  json out = stdout_json();
  CHECK(out["result"]["objective"].get<double>() >= 2.0 - 1e-6);
  CHECK(out["result"]["feasibility"]["feasible"] == true);
  CHECK(out["rank_bound"] == 1);

  REQUIRE(run("solve-entropy --m1 0.5 --m2 0.333333333333333333 --m3 0.25 "
              "--basis-size 6 --restarts 4") == 0);
  CHECK(stdout_json()["entropy"].get<double>() <= 1e-4);

  REQUIRE(run("oracle-compare --instances 50 --max-dim 5 --seed 3 --serial") == 0);
  out = stdout_json();
  CHECK(out["instances"] == 50);
  CHECK(out["disagreements"] == 0);
}

TEST_CASE("csv format emits a flat table") {
  REQUIRE(run("bp-bound --constraints 4 --field complex --format csv") == 0);
  std::ifstream in(work_dir() / "stdout.json");
  std::string header, row;
  REQUIRE(std::getline(in, header));
  REQUIRE(std::getline(in, row));
  CHECK(header.find("max_rank") != std::string::npos);
  CHECK(row.find('2') != std::string::npos);
}
