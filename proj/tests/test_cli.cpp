#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "spingeom/cli.hpp"
#include "spingeom/group.hpp"

using namespace spingeom;
using nlohmann::json;

namespace {

const std::filesystem::path kSource = SPINGEOM_SOURCE_DIR;

std::string scenario(const std::string& name) { return (kSource / "scenarios" / name).string(); }
std::string fixture(const std::string& name) { return (kSource / "tests" / "fixtures" / name).string(); }

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "spingeom_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("free particle keeps its spin columns constant") {
  const auto csv = scratch("free.csv");
  const Result r = run({"simulate", scenario("free_particle.json"), "--output", csv.string()});
  CHECK(r.code == cli::kExitOk);
  const auto rows = read_csv(csv);
  REQUIRE(rows.size() == 12);
  const auto& header = rows[0];
  for (const char* col : {"S01", "S02", "S03", "S12", "S13", "S23", "phi", "q"}) {
    const auto it = std::find(header.begin(), header.end(), col);
    REQUIRE(it != header.end());
    const std::size_t c = static_cast<std::size_t>(it - header.begin());
    if (std::string(col) == "phi") continue;
    for (std::size_t k = 2; k < rows.size(); ++k) CHECK(rows[k][c] == rows[1][c]);
  }
  CHECK(header[5] == "p0");
  const json report = json::parse(slurp(scratch("free.report.json")));
  CHECK(report["pass"] == true);
  CHECK(report["steps"] == 10);
}

TEST_CASE("uniform field report shows bounded total-spin drift") {
  const auto csv = scratch("uniform.csv");
  const Result r = run({"simulate", scenario("bmt_uniform_b.json"), "--output", csv.string(), "--json"});
  CHECK(r.code == cli::kExitOk);
  const json report = json::parse(r.out);
  CHECK(report["monitors"]["total_spin"]["drift"].get<double>() <= 1e-10);
  CHECK(report["monitors"]["mass_shell"]["drift"].get<double>() <= 1e-8);
  CHECK_FALSE(report.contains("wall_time_s"));
  CHECK(slurp(scratch("uniform.report.json")) == r.out);
  // stride 100 over 10000 steps, plus the header
  CHECK(read_csv(csv).size() == 102);
}

TEST_CASE("simulate output is deterministic") {
  const auto a = scratch("det_a.csv");
  const auto b = scratch("det_b.csv");
  CHECK(run({"simulate", scenario("linear_potential.json"), "--output", a.string()}).code == 0);
  CHECK(run({"simulate", scenario("linear_potential.json"), "--output", b.string()}).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(scratch("det_a.report.json")) == slurp(scratch("det_b.report.json")));
}

TEST_CASE("strict constraints reject off-shell initial data") {
  const Result strict = run({"simulate", scenario("bmt_off_shell.json"), "--strict-constraints"});
  CHECK(strict.code == cli::kExitInput);
  CHECK(strict.err.find("u.u = c^2") != std::string::npos);
  CHECK(strict.err.find("residual") != std::string::npos);
  const Result lax = run({"simulate", scenario("bmt_off_shell.json")});
  CHECK(lax.code == cli::kExitOk);
  CHECK(lax.err.find("warning") != std::string::npos);
}

TEST_CASE("schema errors name the field") {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"missing_mass.json", "params.m"},
      {"bad_field.json", "field.F"},
      {"not_json.json", "not valid JSON"},
      {"does_not_exist.json", "cannot read"},
  };
  for (const auto& [file, field] : cases) {
    const Result r = run({"simulate", fixture(file)});
    CAPTURE(file);
    CHECK(r.code == cli::kExitInput);
    CHECK(r.err.find(field) != std::string::npos);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  }
}

TEST_CASE("declared tolerance failure exits 2") {
  const Result r = run({"simulate", fixture("tolerance_failure.json"), "--json"});
  CHECK(r.code == cli::kExitFailure);
  CHECK(json::parse(r.out)["pass"] == false);
  CHECK(r.err.find("mass_shell") != std::string::npos);
}

TEST_CASE("verify suites") {
  Result r = run({"verify", "group", "--seed", "7", "--json"});
  CHECK(r.code == cli::kExitOk);
  const json report = json::parse(r.out);
  CHECK(report["pass"] == true);
  for (const json& p : report["properties"]) {
    CHECK(p.contains("samples"));
    CHECK(p.contains("worst_error"));
    CHECK(p.contains("tolerance"));
  }

  r = run({"verify", "operators", "--seed", "7", "--corrupt-generator", "--json"});
  CHECK(r.code == cli::kExitFailure);
  const json corrupt = json::parse(r.out);
  bool recorded = false;
  for (const json& p : corrupt["properties"]) {
    if (p["property"] == "generator_action_dirac") recorded = !p["pass"].get<bool>();
  }
  CHECK(recorded);

  CHECK(run({"verify", "everything"}).code == cli::kExitInput);
}

TEST_CASE("verify all is byte-identical under a fixed seed") {
  const Result a = run({"verify", "all", "--seed", "11", "--json"});
  const Result b = run({"verify", "all", "--seed", "11", "--json"});
  CHECK(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
}

TEST_CASE("convergence ladders") {
  Result r = run({"convergence", scenario("bmt_convergence.json"), "--json"});
  REQUIRE(r.code == cli::kExitOk);
  json table = json::parse(r.out);
  CHECK(table["rungs"].size() == 5);
  CHECK(table["fitted_order"].get<double>() == doctest::Approx(4.0).epsilon(0.025));

  const auto csv = scratch("free_conv.csv");
  r = run({"convergence", scenario("free_particle.json"), "--json", "--output", csv.string()});
  REQUIRE(r.code == cli::kExitOk);
  table = json::parse(r.out);
  CHECK(table["fitted_order"] == "exact");
  CHECK(table["rungs"][0]["order"] == "exact");
  CHECK(read_csv(csv)[0] == std::vector<std::string>{"dt", "nsteps", "error", "order"});

  r = run({"convergence", scenario("bmt_convergence.json"), "--ladder", "0.1,0.05,0.025"});
  CHECK(r.code == cli::kExitInput);
  CHECK(r.err.find("at least 4") != std::string::npos);
  r = run({"convergence", scenario("bmt_convergence.json"), "--ladder", "0.1,0.05,0.02,0.01"});
  CHECK(r.code == cli::kExitInput);
}

TEST_CASE("decompose") {
  Result r = run({"decompose", "--lambda", "1", "0", "0", "0", "0", "0", "1", "0", "--p", "1", "0",
                  "0", "0", "--m", "1", "--json"});
  REQUIRE(r.code == cli::kExitOk);
  json d = json::parse(r.out);
  CHECK(d["boost"]["lambda"] == 1.0);
  CHECK(d["euler"]["beta"] == 0.0);
  CHECK(d["reassembly_residual"] == 0.0);

  const group::GroupElement lam =
      group::exp_group(AlgebraCoefficients({0.3, -0.2, 0.1, 0.4, 0.2, -0.5}));
  std::vector<std::string> args{"decompose", "--lambda"};
  for (int k = 0; k < 4; ++k) {
    const group::Complex z = lam(k / 2, k % 2);
    args.push_back(num(z.real()));
    args.push_back(num(z.imag()));
  }
  const double m = 1.3;
  const double px = 0.4, py = -0.7, pz = 0.2;
  for (const std::string& s : {std::string("--p"), num(std::sqrt(m * m + px * px + py * py + pz * pz)),
                               num(px), num(py), num(pz), std::string("--m"), num(m),
                               std::string("--json")}) {
    args.push_back(s);
  }
  r = run(args);
  REQUIRE(r.code == cli::kExitOk);
  CHECK(json::parse(r.out)["reassembly_residual"].get<double>() <= 1e-12);

  r = run({"decompose", "--lambda", "1", "0", "0", "0", "0", "0", "1", "0", "--p", "1", "0.2",
           "0", "0", "--m", "1"});
  CHECK(r.code == cli::kExitInput);
  CHECK(r.err.find("p.p - m^2 = -0.04") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kExitInput);
  CHECK(run({"simulate"}).code == cli::kExitInput);
  CHECK(run({"frobnicate"}).code == cli::kExitInput);
  CHECK(run({"--help"}).code == cli::kExitOk);
}

}  // TEST_SUITE
