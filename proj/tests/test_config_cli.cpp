#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <unistd.h>

#include "diracres/cli.hpp"
#include "diracres/config.hpp"
#include "diracres/errors.hpp"

using namespace diracres;
namespace fs = std::filesystem;

namespace {

const fs::path potentials = fs::path(DIRACRES_SOURCE_DIR) / "potentials";

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string config_error(const std::string& text) {
  try {
    parse_potential_string(text, "t.yaml");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

RunConfig config(const std::string& file, const std::string& command, const fs::path& out) {
  RunConfig c;
  c.potential_path = (potentials / file).string();
  c.potential = parse_potential_file(c.potential_path);
  c.command = command;
  c.out = out.string();
  return c;
}

struct TempDir {
  fs::path path = fs::temp_directory_path() / ("diracres_cli_" + std::to_string(::getpid()));
  TempDir() { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("shipped potential files parse") {
  const PotentialSpec w = parse_potential_file((potentials / "square_well.yaml").string());
  CHECK(w.kappa() == 1);
  CHECK(w.mass() == 0.0);
  CHECK(w.gamma() == 1.0);
  CHECK(w(0.5) == 4.0);
  const PotentialSpec t = parse_potential_file((potentials / "tent.yaml").string());
  CHECK(t.is_continuous());
  CHECK(t(0.25) == doctest::Approx(0.5));
  CHECK(t.integral() == doctest::Approx(0.5));
  const PotentialSpec d = parse_potential_file((potentials / "deep_well_two_levels.yaml").string());
  CHECK(d.gamma() == 2.0);
  CHECK(d.mass() == 1.0);
  CHECK(parse_potential_file((potentials / "free.yaml").string()).is_zero());
}

TEST_CASE("configuration diagnostics carry source and line") {
  CHECK(config_error("kappa: 1\nmass: 0\n").rfind("t.yaml:1: pieces:", 0) == 0);
  const std::string e1 = config_error("kappa: 1.5\nmass: 0\npieces:\n  - [0, 1, [1]]\n");
  CHECK(e1.rfind("t.yaml:1: kappa:", 0) == 0);
  const std::string e2 = config_error("kappa: 1\nmass: -1\npieces:\n  - [0, 1, [1]]\n");
  CHECK(e2.rfind("t.yaml:2: mass:", 0) == 0);
  const std::string e3 = config_error("kappa: 1\nmass: 0\npieces:\n  - [0, 1, [1]]\n  - [1.5, 2, [1]]\n");
  CHECK(e3.rfind("t.yaml:5:", 0) == 0);
  const std::string e4 = config_error("kappa: 1\nmass: 0\npieces:\n  - [0.2, 1, [1]]\n");
  CHECK(e4.rfind("t.yaml:4:", 0) == 0);
  const std::string e5 = config_error("kappa: 1\nmass: 0\npieces:\n  - {lo: 0, hi: 1, coeffs: [abc]}\n");
  CHECK(e5.rfind("t.yaml:4:", 0) == 0);
  CHECK_THROWS_AS(parse_potential_file("/nonexistent/p.yaml"), ConfigError);
}

TEST_CASE("argument parsers") {
  const auto g = parse_grid("1,3,3,0.5");
  REQUIRE(g.size() == 3);
  CHECK(g[1] == cplx(2.0, 0.5));
  const auto p = parse_points("1.5,2:-0.25");
  REQUIRE(p.size() == 2);
  CHECK(p[1] == cplx(2.0, -0.25));
  const Region r = parse_region("-1,1,-2,0");
  CHECK(r.im_lo == -2.0);
  CHECK_THROWS_AS(parse_grid("1,2"), UsageError);
  CHECK_THROWS_AS(parse_region("1,0,0,1"), UsageError);
  CHECK_THROWS_AS(parse_points("x"), UsageError);
}

TEST_CASE("find-states on the free potential is empty") {
  TempDir t;
  RunConfig c = config("free.yaml", "find-states", t.path / "s.csv");
  c.region = Region{-20.0, 20.0, -5.0, 5.0};
  std::ostringstream diag;
  CHECK(run(c, diag) == 0);
  CHECK(slurp(t.path / "s.csv") == "re_lambda,im_lambda,re_value,im_value,abs_error_estimate,route\n");
}

TEST_CASE("counting needs a raised ceiling and then tracks the density") {
  TempDir t;
  RunConfig c = config("square_well.yaml", "counting", t.path / "n.csv");
  c.radii = {100.0};
  std::ostringstream diag;
  CHECK(run(c, diag) == 4);
  CHECK(diag.str().find("--ceiling") != std::string::npos);
  c.ceiling = 220.0;
  CHECK(run(c, diag) == 0);
  std::istringstream in(slurp(t.path / "n.csv"));
  std::string header, line;
  std::getline(in, header);
  std::getline(in, line);
  double r, zero, count, ratio;
  char comma;
  std::istringstream row(line);
  row >> r >> comma >> zero >> comma >> count >> comma >> ratio;
  CHECK(r == 100.0);
  CHECK(ratio == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("eval-jost rows and the high-energy residual") {
  TempDir t;
  RunConfig c = config("square_well.yaml", "eval-jost", t.path / "j.csv");
  c.points = {cplx(150.0, 0.0), cplx(1.0, 2.0)};
  std::ostringstream diag;
  REQUIRE(run(c, diag) == 0);
  const std::string out = slurp(t.path / "j.csv");
  for (const char* route : {",wronskian\n", ",integral\n", ",g_minus\n", ",phase\n", ",limit_residual\n"})
    CHECK(out.find(route) != std::string::npos);
  //! Repeat runs are byte-identical.
  RunConfig c2 = c;
  c2.out = (t.path / "j2.csv").string();
  REQUIRE(run(c2, diag) == 0);
  CHECK(slurp(t.path / "j2.csv") == out);
  //! JSON mirrors the CSV rows.
  RunConfig cj = c;
  cj.out = (t.path / "j.json").string();
  cj.format = OutputFormat::json;
  REQUIRE(run(cj, diag) == 0);
  const auto j = nlohmann::json::parse(slurp(t.path / "j.json"));
  CHECK(j["command"] == "eval-jost");
  std::size_t csv_rows = 0;
  for (char ch : out) csv_rows += ch == '\n';
  CHECK(j["rows"].size() == csv_rows - 1);
}

TEST_CASE("exit codes and failure manifest") {
  TempDir t;
  std::ostringstream diag;
  RunConfig bad = config("square_well.yaml", "no-such-command", t.path / "x.csv");
  CHECK(run(bad, diag) == 2);

  RunConfig deep = config("square_well.yaml", "eval-jost", t.path / "d.csv");
  deep.points = {cplx(1.0, -30.0)};
  CHECK(run(deep, diag) == 4);

  RunConfig branch = config("square_well.yaml", "eval-jost", t.path / "b.csv");
  branch.points = {cplx(2.0, 0.0), cplx(0.0, 0.0)};
  CHECK(run(branch, diag) == 3);
  //! Branch points are rejected during validation, before any row is computed.
  CHECK(slurp(t.path / "b.csv") == "re_lambda,im_lambda,re_value,im_value,abs_error_estimate,route\n");
  const auto manifest = nlohmann::json::parse(slurp(t.path / "b.csv.failure.json"));
  CHECK(manifest["failure"] == "numerical");
  CHECK(manifest["exit_code"] == 3);
  CHECK(manifest["rows_written"] == 0);
}
