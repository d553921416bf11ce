#include <charconv>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "jckerr/cli/app.hpp"
#include "jckerr/cli/serialize.hpp"
#include "jckerr/cli/verify.hpp"
#include "jckerr/rng.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace jckerr;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "jckerr");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "jckerr_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) cells.push_back(cell);
  return cells;
}

}  // namespace

TEST_CASE("format_double round-trips exactly") {
  SplitMix64 rng(99);
  for (int i = 0; i < 20000; ++i) {
    std::uint64_t bits = rng.next();
    double value;
    std::memcpy(&value, &bits, sizeof value);
    if (!std::isfinite(value)) continue;
    const auto text = cli::format_double(value);
    double back = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), back);
    CHECK(std::memcmp(&back, &value, sizeof value) == 0);
  }
  CHECK(cli::format_double(0.1) == "0.1");
  CHECK(cli::format_double(std::nan("")) == "nan");
  CHECK(cli::checksum_hex("") == "cbf29ce484222325");
}

TEST_CASE("spectrum command") {
  SUBCASE("degenerate ground exits 2") {
    const auto r = run_cli({"spectrum", "--n", "0", "--delta", "2", "--eps", "0", "--chi", "1"});
    CHECK(r.code == 2);
    CHECK(r.out.find("eigenvalues: -1 -1 0 0") != std::string::npos);
    CHECK(r.out.find("DEGENERATE") != std::string::npos);
  }
  SUBCASE("ground energy") {
    const auto r = run_cli({"--format", "json", "spectrum", "--n", "0", "--delta", "1.5", "--eps", "1"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["ground_energy"].get<double>() == doctest::Approx(-2.9654).epsilon(1e-4));
    CHECK(j["mode"] == "corrected");
    CHECK(j["meta"]["config"]["command"] == "spectrum");
  }
  SUBCASE("printed mode is labelled and differs") {
    const auto c = run_cli({"spectrum", "--n", "0", "--delta", "1.5", "--eps", "1"});
    const auto p = run_cli({"--mode", "printed", "spectrum", "--n", "0", "--delta", "1.5", "--eps", "1"});
    CHECK(p.out.find("mode: printed") != std::string::npos);
    CHECK(c.out != p.out);
  }
  SUBCASE("usage errors exit 1") {
    CHECK(run_cli({"spectrum", "--delta", "1"}).code == 1);
    CHECK(run_cli({"spectrum", "--delta", "1", "--eps", "-1"}).code == 1);
    CHECK(run_cli({"--mode", "bogus", "spectrum", "--delta", "1", "--eps", "1"}).code == 1);
    CHECK(run_cli({"--chi", "0", "spectrum", "--delta", "1", "--eps", "1"}).code == 1);
    CHECK(run_cli({}).code == 1);
  }
}

TEST_CASE("sweep command") {
  const auto a = scratch("sweep_a.csv");
  const auto b = scratch("sweep_b.csv");
  const auto c = scratch("sweep_c.csv");
  std::vector<std::string> base{"sweep", "--n", "0", "--delta-min", "-2", "--delta-max", "6",
                                "--delta-steps", "201", "--eps-min", "0", "--eps-max", "3",
                                "--eps-steps", "201"};
  auto with = [&](std::vector<std::string> extra) {
    auto args = extra;
    args.insert(args.end(), base.begin(), base.end());
    return run_cli(args);
  };
  const auto ra = with({"--threads", "1", "--out", a.string()});
  const auto rb = with({"--threads", "8", "--out", b.string()});
  const auto rc = with({"--threads", "8", "--out", c.string()});
  REQUIRE(ra.code == 0);
  CHECK(ra.out.find("rows: 40401") != std::string::npos);
  const auto text = slurp(a);
  CHECK(text == slurp(b));
  CHECK(text == slurp(c));
  CHECK(ra.out == rb.out);

  const auto lines = lines_of(text);
  REQUIRE(lines.size() == 40402);
  CHECK(lines[0] == std::string(cli::kSweepHeader));
  for (std::size_t i = 1; i < lines.size(); i += 997) CHECK(split(lines[i]).size() == 13);
  CHECK(text.find('\r') == std::string::npos);
  // first data row: Δ = −2, ε = 0 → ground |0,ee>, berry 0
  const auto first = split(lines[1]);
  CHECK(first[1] == "-2");
  CHECK(first[2] == "0");
  CHECK(first[4] == "corrected");
  CHECK(first[9] == "0");

  SUBCASE("json mirrors csv") {
    const auto r = run_cli({"--format", "json", "--phase-units", "rad", "sweep", "--delta-steps", "3", "--eps-steps", "2"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["rows"].size() == 6);
    CHECK(j["meta"]["version"] == cli::kVersion);
    CHECK(j["meta"]["config"]["phase_units"] == "rad");
    CHECK(j["rows"][0].size() == 13);
    CHECK(r.err.find("rows: 6") != std::string::npos);
  }
  SUBCASE("json is thread independent") {
    const auto r1 = run_cli({"--format", "json", "--threads", "1", "sweep", "--delta-steps", "11", "--eps-steps", "7"});
    const auto r4 = run_cli({"--format", "json", "--threads", "4", "sweep", "--delta-steps", "11", "--eps-steps", "7"});
    CHECK(r1.out == r4.out);
  }
  SUBCASE("unrequested quantities are nan") {
    const auto r = run_cli({"sweep", "--delta-steps", "2", "--eps-steps", "2", "--quantities", "entropy"});
    const auto row = split(lines_of(r.out)[1]);
    CHECK(row[5] == "nan");
    CHECK(row[9] == "nan");
    CHECK(row[10] != "nan");
    CHECK(run_cli({"sweep", "--quantities", "colour"}).code == 1);
  }
  SUBCASE("I/O failure exits 3") {
    const auto r = run_cli({"--out", "/nonexistent-dir/x.csv", "sweep", "--delta-steps", "2", "--eps-steps", "2"});
    CHECK(r.code == 3);
  }
}

TEST_CASE("curve command") {
  const auto r = run_cli({"curve", "--n", "0", "--eps-min", "0.1", "--eps-max", "3", "--steps", "30"});
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 31);
  CHECK(lines[0] == std::string(cli::kCurveHeader));
  bool saw_one = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto row = split(lines[i]);
    REQUIRE(row.size() == 8);
    CHECK(std::stod(row[4]) <= 1e-3);
    CHECK(std::stod(row[6]) == doctest::Approx(2.0).epsilon(1e-9));  // units of π
    if (std::fabs(std::stod(row[1]) - 1.0) < 1e-9) {
      saw_one = true;
      CHECK(std::stod(row[2]) == doctest::Approx(1.49121).epsilon(1e-5));
    }
  }
  CHECK(saw_one);

  const auto multi = run_cli({"curve", "--n", "0,2,10,40", "--eps-min", "0.5", "--eps-max", "1", "--steps", "2"});
  CHECK(lines_of(multi.out).size() == 9);

  const auto printed = run_cli({"--mode", "printed", "curve", "--steps", "2", "--eps-min", "0.5", "--eps-max", "1"});
  CHECK(printed.code == 0);
  CHECK(printed.out.find(",nan,") != std::string::npos);
  CHECK(printed.err.find("no interior maximum") != std::string::npos);
}

TEST_CASE("holonomy command") {
  const auto r = run_cli({"--phase-units", "rad", "--format", "json", "holonomy", "--n", "0", "--delta", "1.5", "--eps", "1", "--steps", "4096"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["loops"][0]["abs_error"].get<double>() <= 1e-6);
  CHECK(j["loops"][1]["abs_error"].get<double>() < j["loops"][0]["abs_error"].get<double>());

  const auto zero = run_cli({"holonomy", "--n", "0", "--delta", "0", "--eps", "0"});
  CHECK(zero.code == 0);
  CHECK(zero.out.find("closed_form: 0 pi") != std::string::npos);
  CHECK(zero.out.find("holonomy 0 ") != std::string::npos);

  const auto coarse = run_cli({"holonomy", "--n", "0", "--delta", "1.5", "--eps", "1", "--steps", "4"});
  CHECK(coarse.code == 2);
  CHECK(coarse.err.find("increase --steps") != std::string::npos);

  CHECK(run_cli({"holonomy", "--n", "0", "--delta", "1", "--eps", "0"}).code == 2);
}

TEST_CASE("crossings command") {
  const auto r = run_cli({"--format", "json", "crossings", "--n", "0"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["crossings"].size() == 2);
  CHECK(j["crossings"][0].get<double>() == doctest::Approx(1.0).epsilon(0.05));
  CHECK(j["crossings"][1].get<double>() == doctest::Approx(3.0).epsilon(0.02));
  CHECK(run_cli({"crossings", "--n", "0", "--delta-min", "10", "--delta-max", "20"}).code == 2);
}

TEST_CASE("verify command") {
  const auto ok = run_cli({"verify"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("ALL PASS") != std::string::npos);
  const auto bad = run_cli({"verify", "--inject-printed"});
  CHECK(bad.code == 2);
  CHECK(bad.out.find("FAIL curve") != std::string::npos);
  CHECK(run_cli({"verify", "--samples", "0"}).code == 1);
  CHECK(run_cli({"--seed", "12345", "verify", "--samples", "20"}).code == 0);

  const auto groups = cli::run_verification({.seed = 1, .samples = 10, .inject_printed = false});
  CHECK(groups.size() == 6);
  for (const auto& g : groups) CHECK_MESSAGE(g.passed, g.name << ": " << g.detail);
}

TEST_CASE("config file") {
  const auto path = scratch("run.conf");
  {
    std::ofstream f(path);
    f << "# defaults\n"
         "delta = 1.5\n"
         "eps = 1\n"
         "phase_units = rad\n"
         "delta-steps = 5\n";  // sweep-only key, ignored by spectrum
  }
  const auto r = run_cli({"--config", path.string(), "spectrum"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("delta: 1.5") != std::string::npos);
  CHECK(r.out.find(" rad") != std::string::npos);

  const auto override = run_cli({"--config", path.string(), "spectrum", "--delta", "2.5"});
  CHECK(override.out.find("delta: 2.5") != std::string::npos);

  const auto bad = scratch("bad.conf");
  {
    std::ofstream f(bad);
    f << "colour = blue\n";
  }
  CHECK(run_cli({"--config", bad.string(), "spectrum"}).code == 1);
  CHECK(run_cli({"--config", scratch("missing.conf").string(), "spectrum"}).code == 3);
}
