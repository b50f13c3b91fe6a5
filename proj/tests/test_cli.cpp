// SPDX-License-Identifier: Apache-2.0

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CSZEGO_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir(CSZEGO_SCRATCH_DIR);
  fs::create_directories(dir);
  return dir / name;
}

std::map<std::string, std::string> report(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    const auto sp = line.find(' ');
    kv[line.substr(0, sp)] = sp == std::string::npos ? "" : line.substr(sp + 1);
  }
  return kv;
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

double wedge_B(double t) { return 2 / kPi * std::sqrt((kPi - t) * t / std::sin(t)); }

}  // namespace

TEST_CASE("lambda command") {
  Run r = run("lambda --curve circle:cx=0,cy=0,r=1 --z 0.2+0.1i");
  CHECK(r.code == 0);
  CHECK(std::abs(std::stod(report(r.out)["lambda"]) - 1.0) < 1e-10);
  CHECK(report(r.out)["regime"] == "interior");

  r = run("lambda --curve ellipse:r=2 --z inf");
  CHECK(r.code == 0);
  const double e = std::comp_ellint_2(std::sqrt(3.0) / 2);
  CHECK(std::abs(std::stod(report(r.out)["lambda"]) - std::sqrt(8.0 / (3 * kPi) * e)) < 1e-12);

  r = run("lambda --curve wedge:theta=0.3926990817 --z 1+0i --format json");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["lambda"].get<double>() - wedge_B(0.3926990817)) < 1e-12);
  CHECK(j["regime"] == "interior");

  // Seventeen significant digits in text output.
  r = run("lambda --curve ellipse:r=2 --z 0");
  const std::string v = report(r.out)["lambda"];
  CHECK(v.size() == 18);
}

TEST_CASE("exit codes") {
  CHECK(run("lambda --curve ellipse:r=2 --z 1+").code == 2);
  CHECK(run("lambda --curve ellipse:q=2 --z 0").code == 2);
  CHECK(run("lambda --curve ellipse:r=2").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("scan --curve ellipse:r=2 --box -1,1,-1,1 --res 513").code == 2);
  CHECK(run("scan --curve ellipse:r=2").code == 2);
  CHECK(run("lambda --curve ellipse:r=0.5 --z 0").code == 3);
  CHECK(run("lambda --curve 'mobius(1,0,1,-2)*ellipse:r=2' --z 0").code == 3);
  CHECK(run("spectrum --curve wedge:theta=0.5").code == 3);
  CHECK(run("bounds --curve ellipse:r=2 --nodes 63").code == 3);
  CHECK(run("lambda --curve ellipse:r=2 --z 0 --out /nonexistent-dir/x.txt").code == 4);
  CHECK(run("scan --r-range 1,2 --samples 3 --out /nonexistent-dir/x.csv").code == 4);
  CHECK(run("--help").code == 0);
}

TEST_CASE("scan golden file and determinism") {
  const fs::path a = scratch("golden_a.csv"), b = scratch("golden_b.csv");
  const std::string args = "scan --curve ellipse:r=2 --box -3,3,-1.5,1.5 --res 7,3 --out ";
  REQUIRE(run(args + a.string()).code == 0);
  REQUIRE(run(args + b.string()).code == 0);
  CHECK(slurp(a) == slurp(b));

  const auto got = csv(slurp(a));
  const auto want = csv(slurp(fs::path(CSZEGO_GOLDEN_DIR) / "ellipse_r2_box.csv"));
  REQUIRE(got.size() == want.size());
  CHECK(got[0] == std::vector<std::string>{"x", "y", "lambda", "regime"});
  CHECK(got[0] == want[0]);
  for (std::size_t i = 1; i < got.size(); ++i) {
    REQUIRE(got[i].size() == 4);
    CHECK(got[i][0] == want[i][0]);
    CHECK(got[i][1] == want[i][1]);
    CHECK(std::abs(std::stod(got[i][2]) - std::stod(want[i][2])) < 1e-12);
    CHECK(got[i][3] == want[i][3]);
  }
}

TEST_CASE("scan modes") {
  SUBCASE("wedge ray") {
    const double th = kPi / 8;
    const Run r = run("scan --curve wedge:theta=0.39269908169872414 --ray 1 --samples 500");
    REQUIRE(r.code == 0);
    const auto rows = csv(r.out);
    CHECK(rows[0] == std::vector<std::string>{"phi", "lambda"});
    CHECK(rows.size() == 501);
    double interior = 0.0, step = 2 * kPi / 501;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double phi = std::stod(rows[i][0]), v = std::stod(rows[i][1]);
      CHECK(phi > -th);
      CHECK(phi < 2 * kPi - th);
      CHECK(v >= 1.0);
      if (std::abs(phi) < th) interior = std::max(interior, v);
    }
    // Interior peak at phi = 0 up to the grid spacing; the value is quadratic there.
    CHECK(interior <= wedge_B(th) + 1e-14);
    CHECK(wedge_B(th) - interior < step * step);
  }
  SUBCASE("ellipse family") {
    const Run r = run("scan --r-range 1,6 --samples 26");
    REQUIRE(r.code == 0);
    const auto rows = csv(r.out);
    CHECK(rows[0] == std::vector<std::string>{"r", "lambda0", "lambda_inf"});
    REQUIRE(rows.size() == 27);
    for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::stod(rows[i][1]) > std::stod(rows[i][2]));
  }
  SUBCASE("real axis") {
    const Run r = run("scan --curve ellipse:r=2 --box -6,6,0,0 --res 241,1 --format json");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.size() == 239);  // two nodes on the curve fall in the collar
    double best = 0.0, at = 1.0;
    for (const auto& row : j) {
      CHECK(row.size() == 4);
      if (row["lambda"].get<double>() > best) {
        best = row["lambda"].get<double>();
        at = row["x"].get<double>();
      }
    }
    CHECK(at == 0.0);
  }
}

TEST_CASE("verify command") {
  const Run r = run("verify --level quick");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["passed"] == true);
  CHECK(j["checks"].size() > 10);
  for (const auto& c : j["checks"]) CHECK(c["margin"].get<double>() >= 0.0);
}

TEST_CASE("spectrum command") {
  Run r = run("spectrum --curve ellipse:r=1.1 --nodes 256 --count 4");
  REQUIRE(r.code == 0);
  const double ratio = std::stod(report(r.out)["bolt_ratio"]);
  CHECK(ratio >= 0.9);
  CHECK(ratio <= 1.1);

  r = run("spectrum --curve ellipse:r=2 --count 4 --format json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["lambda"].size() == 4);
  CHECK(j["lambda1_residual"].get<double>() < 1e-6);
  for (const auto& p : j["pair_residuals"]) CHECK(p.get<double>() < 1e-8);

  r = run("spectrum --curve circle:r=1 --nodes 128 --count 4 --format json");
  REQUIRE(r.code == 0);
  for (const auto& l : nlohmann::json::parse(r.out)["lambda"]) CHECK(l.get<double>() < 1e-10);
}

TEST_CASE("bounds command") {
  Run r = run("bounds --curve ellipse:r=2 --format json");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["upper"].get<double>() - std::sqrt(10.0) / 3) < 1e-15);
  CHECK(j["lower"].get<double>() <= j["operator_norm"].get<double>());
  CHECK(j["sandwich"] == "ok");

  r = run("bounds --curve circle:r=1 --format json");
  REQUIRE(r.code == 0);
  j = nlohmann::json::parse(r.out);
  for (const char* k : {"lower", "upper", "operator_norm"}) CHECK(std::abs(j[k].get<double>() - 1.0) < 1e-6);

  r = run("bounds --curve wedge:theta=0.39269908169872414 --format json");
  REQUIRE(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["upper"].is_null());
  CHECK(j["operator_norm"].is_null());
  CHECK(j["lower"].get<double>() >= wedge_B(kPi / 8));
}

TEST_CASE("csv report format") {
  const Run r = run("lambda --curve circle:r=1 --z inf --format csv");
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  CHECK(rows[0] == std::vector<std::string>{"key", "value"});
  CHECK(rows[2] == std::vector<std::string>{"z", "inf"});
}
