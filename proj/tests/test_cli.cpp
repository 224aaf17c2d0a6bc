#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(NORMGEO_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

json strip_timestamp(json j) {
  j.erase("timestamp");
  return j;
}

std::string octagon_path() { return std::string(NORMGEO_SOURCE_DIR) + "/tests/data/octagon.json"; }

}  // namespace

TEST_CASE("compute emits a run record and exit 0") {
  const auto r = run_cli("compute --space l2:2 --constant mr --p 0.5 --seed 1");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["command"] == "compute");
  CHECK(j["space"] == "l2:2");
  CHECK(j["cached"] == false);
  CHECK(j["schema_version"] == 1);
  CHECK(j["result"]["constant"] == "mr");
  CHECK(j["result"]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(j["result"]["converged"] == true);
}

TEST_CASE("identical flags give byte-identical JSON modulo timestamp") {
  const std::string flags = "compute --space l1:2 --constant mr --p 0.25 --seed 3 --starts 16";
  const auto a = run_cli(flags);
  const auto b = run_cli(flags);
  CHECK(strip_timestamp(json::parse(a.out)).dump() == strip_timestamp(json::parse(b.out)).dump());
}

TEST_CASE("parse failures exit 2 with no payload") {
  CHECK(run_cli("compute --space l0.5:2 --constant mr --p 0").exit_code == 2);
  CHECK(run_cli("compute --space l2:2 --constant nosuch").exit_code == 2);
  CHECK(run_cli("compute --space l2:2 --constant mr").exit_code == 2);  // missing --p
  CHECK(run_cli("compute --space l2:2 --constant delta --eps 3").exit_code == 2);
  CHECK(run_cli("compute --space poly:@/nonexistent.json --constant dr").exit_code == 2);
  CHECK(run_cli("nosuchcommand").exit_code == 2);
}

TEST_CASE("extended p is gated behind the flag") {
  CHECK(run_cli("compute --space l2:2 --constant mr --p 1.5 --starts 4 --grid 24").exit_code == 2);
  const auto r = run_cli("compute --space l2:2 --constant mr --p 1.5 --extended-p --starts 4 --grid 24");
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.out)["params"]["extended_p"] == true);
}

TEST_CASE("sweep emits the documented CSV") {
  const auto r = run_cli("sweep --space l2:2 --constant mr --p 0:1:0.25 --starts 8 --grid 48");
  CHECK(r.exit_code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "space,constant,p,value,converged,seed");
  int rows = 0;
  while (std::getline(is, line)) {
    if (!line.empty()) ++rows;
    if (rows == 1) CHECK(line.rfind("l2:2,mr,0,", 0) == 0);
  }
  CHECK(rows == 5);
}

TEST_CASE("sweep with step larger than the range yields a single row") {
  const auto r = run_cli("sweep --space l2:2 --constant mr --p 0.5:0.6:5 --starts 4 --grid 24");
  CHECK(r.exit_code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 2);  // header + one row
}

TEST_CASE("sweep range validation") {
  CHECK(run_cli("sweep --space l2:2 --constant mr --p 1:0:0.1").exit_code == 2);
  CHECK(run_cli("sweep --space l2:2 --constant mr --p 0:1:0").exit_code == 2);
  CHECK(run_cli("sweep --space l2:2 --constant mr").exit_code == 2);
}

TEST_CASE("delta sweep on l1 is identically zero") {
  const auto r = run_cli("sweep --space l1:2 --constant delta --eps 0:2:0.5 --starts 8 --grid 48");
  CHECK(r.exit_code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto last_comma = line.rfind(",true,");
    REQUIRE(last_comma != std::string::npos);
    const auto val_start = line.find("delta,") + 6;
    const auto val = line.substr(line.find(',', val_start) + 1);
    CHECK(std::abs(std::strtod(val.c_str(), nullptr)) <= 1e-6);
  }
}

TEST_CASE("verify exit codes distinguish tension from consistency") {
  CHECK(run_cli("verify --space l1:2 --p 0.5 --starts 8 --grid 48").exit_code == 1);
  CHECK(run_cli("verify --space l1:2 --p 0 --starts 8 --grid 48").exit_code == 0);
  const auto r = run_cli("verify --space l1:2 --p 0.5 --starts 8 --grid 48");
  const json j = json::parse(r.out);
  CHECK(j["result"]["findings"][0]["kind"] == "internal-tension");
}

TEST_CASE("polyhedral spaces load from JSON files") {
  const auto r =
      run_cli("compute --space poly:@" + octagon_path() + " --constant eps0 --starts 8 --grid 48");
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.out)["space"] == "poly:2:8v");
}

TEST_CASE("cache: hit on identical flags, miss on different seed, corrupt entry recomputed") {
  const std::string dir = "/tmp/normgeo_test_cache";
  std::system(("rm -rf " + dir).c_str());
  const std::string flags =
      "compute --space l2:2 --constant mr --p 0.5 --seed 9 --starts 8 --grid 48 --cache-dir " + dir;
  const auto a = run_cli(flags);
  const auto b = run_cli(flags);
  CHECK(json::parse(a.out)["cached"] == false);
  CHECK(json::parse(b.out)["cached"] == true);
  json ja = strip_timestamp(json::parse(a.out));
  json jb = strip_timestamp(json::parse(b.out));
  ja.erase("cached");
  jb.erase("cached");
  CHECK(ja.dump() == jb.dump());

  const auto miss = run_cli(
      "compute --space l2:2 --constant mr --p 0.5 --seed 10 --starts 8 --grid 48 --cache-dir " +
      dir);
  CHECK(json::parse(miss.out)["cached"] == false);

  // Corrupt every entry: both runs must degrade to a recompute.
  std::system(("for f in " + dir + "/*.json; do echo garbage > $f; done").c_str());
  const auto c = run_cli(flags);
  CHECK(c.exit_code == 0);
  CHECK(json::parse(c.out)["cached"] == false);
}

TEST_CASE("cache directory from the environment, flag wins") {
  const std::string env_dir = "/tmp/normgeo_test_cache_env";
  const std::string flag_dir = "/tmp/normgeo_test_cache_flag";
  std::system(("rm -rf " + env_dir + " " + flag_dir).c_str());
  const std::string base = "compute --space l2:2 --constant mr --p 1 --seed 2";
  const std::string cmd = std::string("NORMGEO_CACHE_DIR=") + env_dir + " " +
                          NORMGEO_CLI_PATH + " " + base + " --cache-dir " + flag_dir +
                          " >/dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  // Flag directory got the entry; env directory was never created.
  CHECK(std::system(("ls " + flag_dir + "/*.json >/dev/null 2>&1").c_str()) == 0);
  CHECK(std::system(("test -d " + env_dir).c_str()) != 0);

  const std::string cmd2 = std::string("NORMGEO_CACHE_DIR=") + env_dir + " " + NORMGEO_CLI_PATH +
                           " " + base + " >/dev/null 2>&1";
  REQUIRE(std::system(cmd2.c_str()) == 0);
  CHECK(std::system(("ls " + env_dir + "/*.json >/dev/null 2>&1").c_str()) == 0);
}

TEST_CASE("--output writes the document to a file") {
  const std::string path = "/tmp/normgeo_test_out.json";
  std::remove(path.c_str());
  const auto r = run_cli("compute --space l2:2 --constant mr --p 1 --output " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  REQUIRE(in.good());
  json j;
  in >> j;
  CHECK(j["result"]["value"] == 1.0);
}
