// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hopfcert/config.hpp"
#include "hopfcert/csv.hpp"
#include "hopfcert/errors.hpp"

using namespace hopfcert;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "hopfcert_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string(HOPFCERT_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("examples round-trip through the parser") {
  for (const auto& name : config::example_names()) {
    const auto doc = config::example(name);
    const auto cfg = config::parse(doc);
    CHECK(cfg.normalized == doc);
    CHECK(config::parse(cfg.normalized).normalized == doc);
  }
}

TEST_CASE("schema violations") {
  auto doc = config::example("vdp");
  doc["surprise"] = 1;
  CHECK_THROWS_AS(config::parse(doc), ConfigError);
  config::Json expl = {{"model", {{"dimension", 2}, {"A0", {0, 1, -1}}, {"A1", {0, 0, 0, 1}}}},
                       {"envelope", {{"kind", "power"}, {"coefficient", 1.0}, {"exponent", 2.0}}},
                       {"alpha_interval", {-1.0, 1.0}}};
  CHECK_THROWS_AS(config::parse(expl), ConfigError);
  expl["model"]["A0"] = {0, 1, -1, 0};
  const auto cfg = config::parse(expl);
  CHECK(cfg.spec.family.dim() == 2);
  CHECK(cfg.spec.family.at(0.5)(1, 1) == doctest::Approx(0.5));
  auto env = config::example("vdp");
  env["envelope"] = {{"kind", "table"}, {"points", {{0.0, 1.0}, {1.0, 0.5}}}};
  CHECK_THROWS_AS(config::parse(env), ConfigError);
  auto sym = config::example("cube-hopf");
  sym["symmetry"] = "no-such-group";
  CHECK_THROWS(config::parse(sym));
}

TEST_CASE("csv numbers") {
  CHECK(csv::format_number(0.1) == "0.10000000000000001");
  CHECK(csv::format_number(1.0) == "1");
  CHECK(csv::format_number(INFINITY) == "inf");
  CHECK(csv::format_number(-INFINITY) == "-inf");
  CHECK(csv::format_number(NAN) == "nan");
}

TEST_CASE("cli: example, certify, scan-m, verify") {
  const auto dir = scratch("vdp");
  REQUIRE(run("example vdp -d " + dir.string()) == 0);
  const auto cert = config::Json::parse(read(dir / "vdp.cert.json"));
  CHECK(cert["verdict"] == "certified");
  CHECK(cert["R"].get<double>() == doctest::Approx(0.291).epsilon(2e-3));
  CHECK(run("certify " + (dir / "vdp.json").string() + " -q") == 0);
  CHECK(run("verify " + (dir / "vdp.json").string()) == 0);
  REQUIRE(run("scan-m " + (dir / "vdp.json").string()) == 0);

  // α = 0 column of the M grid: minimum near β* among β < 1.
  std::ifstream in(dir / "vdp_m_grid.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "alpha,beta,m_lower,m_upper");
  double best_beta = 0.0, best_m = INFINITY;
  while (std::getline(in, line)) {
    double a, b, lo, hi;
    char c;
    std::stringstream ss(line);
    ss >> a >> c >> b >> c >> lo >> c >> hi;
    if (std::abs(a) < 1e-12 && b < 0.95 && hi < best_m) {
      best_m = hi;
      best_beta = b;
    }
  }
  CHECK(best_beta == doctest::Approx(0.699).epsilon(0.02));
  const std::string polygon = read(dir / "vdp_domain.csv");
  CHECK(polygon.rfind("s,alpha,beta\n", 0) == 0);
  CHECK(polygon.find('\r') == std::string::npos);
}

TEST_CASE("cli: exit codes for bad input") {
  const auto dir = scratch("bad");
  std::ofstream(dir / "dims.json") << R"({"model": {"dimension": 2, "A0": [0, 1, -1], "A1": [0, 0, 0, 1]},
    "envelope": {"kind": "power", "coefficient": 1, "exponent": 2}, "alpha_interval": [-1, 1]})";
  CHECK(run("certify " + (dir / "dims.json").string()) == 3);
  std::ofstream(dir / "broken.json") << "{ not json";
  CHECK(run("certify " + (dir / "broken.json").string()) == 3);
  CHECK(run("certify " + (dir / "missing.json").string()) == 3);
  CHECK(run("example nope -d " + dir.string()) == 3);
  CHECK(run("frobnicate") == 3);
  CHECK(run("catalog") == 0);

  // A crossing-free interval is a violated certificate, exit 2.
  auto doc = config::example("vdp");
  doc["alpha_interval"] = {0.1, 0.3};
  std::ofstream(dir / "flat.json") << doc.dump();
  CHECK(run("certify " + (dir / "flat.json").string() + " -o " + (dir / "flat.cert.json").string()) == 2);
}
