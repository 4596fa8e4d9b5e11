#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int rc;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + RACELAB_CLI + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WEXITSTATUS(status), out};
}

std::string scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "racelab_cli_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("barrier build and verify", "[cli]") {
  const std::string path = scratch("thm311.json");
  auto r = run("--out " + path + " barrier build thm311 --q 7 --tau 1000");
  REQUIRE(r.rc == 0);
  auto j = json::parse(r.out);
  REQUIRE(j["recipe"]["system"]["size"] == 20);
  REQUIRE(j["config"]["q"] == 7);
  REQUIRE(run("barrier verify --recipe " + path).rc == 0);
  REQUIRE(run("barrier build thm311 --q 8").rc == 3);
  REQUIRE(run("barrier build thm311 --q 7 --beta 1.5").rc == 3);
  REQUIRE(run("barrier build nonsense --q 7").rc == 3);
  REQUIRE(run("").rc == 3);
}

TEST_CASE("extremal recipe census", "[cli]") {
  const std::string path = scratch("thm43.json");
  REQUIRE(run("--out " + path + " barrier build thm43 --q 7 --D a,a2,a3").rc == 0);
  auto r = run("orderings --recipe " + path + " --window period");
  REQUIRE(r.rc == 0);
  auto j = json::parse(r.out);
  REQUIRE(j["census"]["census"] == 4);
  REQUIRE(j["turan_lower_bound"] == 4);
  REQUIRE(run("barrier verify --recipe " + path).rc == 0);
}

TEST_CASE("simulate writes data and a plot script", "[cli]") {
  const std::string recipe = scratch("thm51.json"), out = scratch("sim"), plot = scratch("sim.gp");
  REQUIRE(run("--out " + recipe + " barrier build thm51 --q 5").rc == 0);
  auto r = run("--out " + out + " simulate --recipe " + recipe + " --plot " + plot);
  REQUIRE(r.rc == 0);
  auto csv = slurp(out + ".csv");
  REQUIRE(csv.rfind("u,a1,a2,a3,a4", 0) == 0);
  REQUIRE(slurp(plot).find("plot") != std::string::npos);
}

TEST_CASE("race and trig subcommands", "[cli]") {
  auto r = run("--out " + scratch("race4") + " race --q 4 --xmax 1e6");
  REQUIRE(r.rc == 0);
  REQUIRE(json::parse(r.out)["first_lead_change"] == 26861);
  REQUIRE(run("race --q 4 --xmax 1e6", "RACE_LAB_BUDGET=1000").rc == 4);
  auto f = run("trig frac-parts --s 1.4142,1 --alpha 0.4615");
  REQUIRE(f.rc == 0);
  REQUIRE(json::parse(f.out)["pass"] == true);
  auto n = run("trig all-negative --t 1,1.7320508");
  REQUIRE(n.rc == 0);
  REQUIRE(json::parse(n.out)["pass"] == true);
}

TEST_CASE("outputs are deterministic", "[cli]") {
  const std::string args = "barrier build thm43 --q 17 --D a,a2,a3,a4 --r 8";
  auto a = run(args), b = run(args);
  REQUIRE(a.rc == 0);
  REQUIRE(a.out == b.out);
}
