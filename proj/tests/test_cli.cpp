#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mathieu/cli.hpp"
#include "mathieu/csv.hpp"

using namespace mathieu;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> rows(const std::string& s) {
  std::istringstream is(s);
  return csv::read(is);
}

}  // namespace

TEST_CASE("tables at a/lambda = 2") {
  const Run r = run({"tables", "--a-over-lambda", "2", "--nmax", "100", "--pmax", "200"});
  CHECK(r.code == cli::kOk);
  const auto t = rows(r.out);
  REQUIRE(t.size() == 102);
  CHECK(t[0] == std::vector<std::string>{"n", "a", "b"});
  CHECK(t[1][2].empty());  // no b_0
  CHECK(csv::to_double(t[101][0]) == 100);
}

TEST_CASE("usage errors exit with 1") {
  Run r = run({"tables", "--bogus"});
  CHECK(r.code == cli::kUsage);
  CHECK(r.err.find("--bogus") != std::string::npos);
  r = run({"tables"});
  CHECK(r.code == cli::kUsage);
  r = run({"green", "--geometry", "strip", "--source-x", "0.3", "--source-y", "0"});
  CHECK(r.code == cli::kUsage);
  CHECK(r.err.find("focal segment") != std::string::npos);
  CHECK(r.out.empty());
  r = run({"radial", "--theta", "1", "--n", "2", "--method", "nonsense"});
  CHECK(r.code == cli::kUsage);
}

TEST_CASE("help exits with 0") {
  const Run r = run({"--help"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("Subcommands") != std::string::npos);
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args{"radial", "--theta", "9.8696", "--n", "14", "--samples", "7"};
  const Run a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto t = rows(a.out);
  CHECK(t[0] == std::vector<std::string>{"u", "re", "im", "dre", "dim", "branch"});
  CHECK(t.size() == 8);
}

TEST_CASE("green writes one row per sample") {
  const Run r = run({"green", "--geometry", "slit", "--bc", "dirichlet", "--source-x", "1.091", "--source-y", "-0.831",
                     "--samples", "4x3", "--n-terms", "30"});
  CHECK(r.code == 0);
  const auto t = rows(r.out);
  CHECK(t.size() == 13);
  CHECK(t[0] == std::vector<std::string>{"x", "y", "u", "v", "re", "im"});
}

TEST_CASE("wkbdemo and farfield") {
  Run r = run({"wkbdemo", "--samples", "11"});
  CHECK(r.code == 0);
  CHECK(rows(r.out).size() == 12);
  CHECK(r.err.find("x_star") != std::string::npos);
  r = run({"farfield", "--bc", "neumann", "--samples", "9"});
  CHECK(r.code == 0);
  CHECK(rows(r.out)[0] == std::vector<std::string>{"alpha", "I_norm", "I_fraunhofer"});
  r = run({"farfield", "--u0", "2"});
  CHECK(r.code == cli::kUsage);
}

TEST_CASE("output file") {
  const auto path = (std::filesystem::temp_directory_path() / "mathieu_cli_out.csv").string();
  std::filesystem::remove(path);
  Run r = run({"-o", path, "angular", "--theta", "1", "--n", "3", "--samples", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(rows(ss.str()).size() == 6);
  // a failing run leaves no file behind
  std::filesystem::remove(path);
  r = run({"-o", path, "angular", "--theta", "1", "--n", "0", "--class", "odd"});
  CHECK(r.code == cli::kUsage);
  CHECK(!std::filesystem::exists(path));
}

TEST_CASE("validate exits with 2 when a tolerance is breached") {
  // a 10-term wall identity cannot meet 1e-3
  const Run r = run({"validate", "--identity-terms", "10", "--identity-step", "1.0"});
  CHECK(r.code == cli::kValidation);
  const auto t = rows(r.out);
  CHECK(t[0] == std::vector<std::string>{"check", "value", "tol", "pass", "detail"});
  bool any_false = false;
  for (size_t i = 1; i < t.size(); ++i) any_false |= t[i][3] == "0";
  CHECK(any_false);
}
