#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "subprocess.hpp"

using nlohmann::json;
using ordfix::testing::RunResult;
using ordfix::testing::TempDir;
using ordfix::testing::run_command;

namespace {

std::string cli() { return std::string(ORDFIX_CLI_PATH); }

const char* kDiamond = R"({
  "n": 4,
  "labels": ["empty", "a", "b", "ab"],
  "covers": [[0, 1], [0, 2], [1, 3], [2, 3]]
})";

const char* kUnionA = R"({"images": [1, 1, 3, 3], "poset": "diamond.json"})";
const char* kUnionB = R"({"images": [2, 3, 2, 3]})";

const char* kLinearConfig = R"({
  "grid": {"kind": "uniform", "a": 0.0, "b": 1.0, "m": 64},
  "g": {"kind": "constant", "value": 1.0},
  "kernel": {"name": "linear",
             "params": {"lambda": 0.4, "base": "constant"},
             "h": {"kind": "constant", "value": 0.0},
             "M": 0.4},
  "tol": 1e-10,
  "max_iter": 10000,
  "branch": "nonnegative"
})";

}  // namespace

TEST_CASE("poset-check accepts a valid poset and reports its size") {
  TempDir dir;
  const auto poset = dir.write("diamond.json", kDiamond);
  const RunResult r =
      run_command(cli() + " poset-check --poset " + poset.string());
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["valid"] == true);
  CHECK(doc["n"] == 4);
}

TEST_CASE("poset-check rejects cyclic covers with exit 2") {
  TempDir dir;
  const auto poset =
      dir.write("cycle.json", R"({"n": 3, "covers": [[0,1],[1,2],[2,0]]})");
  const RunResult r =
      run_command(cli() + " poset-check --poset " + poset.string());
  CHECK(r.exit_code == 2);
  const json doc = json::parse(r.out);
  CHECK(doc["error"] == "input");
  CHECK(doc["detail"].get<std::string>().find("cycle") != std::string::npos);
}

TEST_CASE("missing files exit 2") {
  const RunResult r =
      run_command(cli() + " poset-check --poset /nonexistent/p.json");
  CHECK(r.exit_code == 2);
}

TEST_CASE("poset-sup reports both supremum routes") {
  TempDir dir;
  const auto poset = dir.write("diamond.json", kDiamond);
  const RunResult r =
      run_command(cli() + " poset-sup --poset " + poset.string() + " 1 2");
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["directed"] == false);
  CHECK(doc["supremum"] == 3);
  CHECK(doc["supremum_via_intervals"].is_null());

  const RunResult r2 =
      run_command(cli() + " poset-sup --poset " + poset.string() + " 1 2 3");
  const json doc2 = json::parse(r2.out);
  CHECK(doc2["directed"] == true);
  CHECK(doc2["supremum"] == 3);
  CHECK(doc2["supremum_via_intervals"] == 3);

  const RunResult bad =
      run_command(cli() + " poset-sup --poset " + poset.string() + " 9");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("fix-orbit runs the worked example") {
  TempDir dir;
  dir.write("diamond.json", kDiamond);
  const auto map = dir.write("union_a.json", kUnionA);
  const RunResult r = run_command(cli() + " fix-orbit --map " + map.string() +
                                  " --start 0");
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["result"] == 1);
  CHECK(doc["orbit"] == json::array({0, 1, 1}));
  CHECK(doc["steps"] == 1);
  CHECK(doc["fixed_points"] == json::array({1, 3}));
  CHECK(doc["maximal_fixed_points"] == json::array({3}));
}

TEST_CASE("fix-orbit rejects a missing witness with the named hypothesis") {
  TempDir dir;
  dir.write("diamond.json", kDiamond);
  const auto map =
      dir.write("down.json", R"({"images": [0,0,0,0], "poset": "diamond.json"})");
  const RunResult r = run_command(cli() + " fix-orbit --map " + map.string() +
                                  " --start 1");
  CHECK(r.exit_code == 1);
  const json doc = json::parse(r.out);
  CHECK(doc["error"] == "hypothesis");
  CHECK(doc["violated"][0] == "c ⪯ T(c) fails");
}

TEST_CASE("fix-orbit rejects a non-monotone map") {
  TempDir dir;
  const auto poset =
      dir.write("chain2.json", R"({"n": 2, "covers": [[0, 1]]})");
  const auto map = dir.write("flip.json", R"({"images": [1, 0]})");
  const RunResult r = run_command(cli() + " fix-orbit --poset " +
                                  poset.string() + " --map " + map.string() +
                                  " --start 0");
  CHECK(r.exit_code == 1);
  const json doc = json::parse(r.out);
  CHECK(doc["violated"][0] == "T monotone fails");
}

TEST_CASE("fix-family finds the common fixed point of the union maps") {
  TempDir dir;
  dir.write("diamond.json", kDiamond);
  const auto a = dir.write("union_a.json", kUnionA);
  const auto b = dir.write("union_b.json", kUnionB);
  const RunResult r = run_command(cli() + " fix-family --family " + a.string() +
                                  " --family " + b.string() + " --start 0");
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["result"] == 3);
  CHECK(doc["closure"] == json::array({0, 1, 2, 3}));
  CHECK(doc["common_fixed_points"] == json::array({3}));
  CHECK(doc["maximal_common_fixed_points"] == json::array({3}));
}

TEST_CASE("fix-family rejects a non-commuting family") {
  TempDir dir;
  dir.write("diamond.json", kDiamond);
  const auto a = dir.write("union_a.json", kUnionA);
  const auto c =
      dir.write("const0.json", R"({"images": [0, 0, 0, 0]})");
  const RunResult r = run_command(cli() + " fix-family --family " + a.string() +
                                  " --family " + c.string() + " --start 0");
  CHECK(r.exit_code == 1);
  const json doc = json::parse(r.out);
  CHECK(doc["violated"][0] == "commuting family fails");
}

TEST_CASE("verify reports a clean run at n = 2") {
  const RunResult r = run_command(cli() + " verify --n 2");
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["n"] == 2);
  CHECK(doc["posets"] == 4);
  CHECK(doc["failures"] == json::array());
}

TEST_CASE("urysohn-solve reproduces the constant-kernel closed form") {
  TempDir dir;
  const auto config = dir.write("linear.json", kLinearConfig);
  const RunResult r =
      run_command(cli() + " urysohn-solve --config " + config.string());
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["branch"] == "nonnegative");
  CHECK(doc["residual"].get<double>() <= 1e-10);
  for (const auto& v : doc["solution"]) {
    CHECK(std::abs(v.get<double>() - 5.0 / 3.0) < 1e-9);
  }
}

TEST_CASE("urysohn-solve writes CSV dumps behind the flag") {
  TempDir dir;
  const auto config = dir.write("linear.json", kLinearConfig);
  const auto prefix = (dir.path() / "run").string();
  const RunResult r = run_command(cli() + " urysohn-solve --config " +
                                  config.string() + " --csv " + prefix);
  CHECK(r.exit_code == 0);
  std::ifstream solution(prefix + ".solution.csv");
  REQUIRE(solution.good());
  std::string header;
  std::getline(solution, header);
  CHECK(header == "t,x");
  CHECK(std::filesystem::exists(prefix + ".trace.csv"));
}

TEST_CASE("urysohn-check flags each violated hypothesis") {
  TempDir dir;

  SUBCASE("non-monotone kernel") {
    const auto config = dir.write("downhill.json", R"({
      "grid": {"kind": "uniform", "a": 0.0, "b": 1.0, "m": 16},
      "g": {"kind": "constant", "value": 1.0},
      "kernel": {"name": "linear", "params": {"lambda": -1.0, "base": "constant"},
                 "h": {"kind": "constant", "value": 0.0}, "M": 0.4},
      "branch": "nonnegative"
    })");
    const RunResult r =
        run_command(cli() + " urysohn-check --config " + config.string());
    CHECK(r.exit_code == 1);
    const json doc = json::parse(r.out);
    CHECK(doc["checks"]["kernel_monotone"]["pass"] == false);
    bool named = false;
    for (const auto& v : doc["violated"]) {
      if (v == "F monotone in x fails") named = true;
    }
    CHECK(named);
  }

  SUBCASE("sign condition for the requested branch") {
    const auto config = dir.write("negdata.json", R"({
      "grid": {"kind": "uniform", "a": 0.0, "b": 1.0, "m": 16},
      "g": {"kind": "constant", "value": -1.0},
      "kernel": {"name": "linear", "params": {"lambda": 0.4, "base": "constant"},
                 "h": {"kind": "constant", "value": 0.0}, "M": 0.4},
      "branch": "nonnegative"
    })");
    const RunResult r =
        run_command(cli() + " urysohn-check --config " + config.string());
    CHECK(r.exit_code == 1);
    const json doc = json::parse(r.out);
    CHECK(doc["branch_available"] == false);
    CHECK(doc["violated"][0] == "J(0) ≥ 0 fails");
  }

  SUBCASE("growth constant out of range") {
    const auto config = dir.write("bigM.json", R"({
      "grid": {"kind": "uniform", "a": 0.0, "b": 1.0, "m": 16},
      "g": {"kind": "constant", "value": 1.0},
      "kernel": {"name": "linear", "params": {"lambda": 0.4, "base": "constant"},
                 "h": {"kind": "constant", "value": 0.0}, "M": 0.6},
      "branch": "nonnegative"
    })");
    const RunResult r =
        run_command(cli() + " urysohn-check --config " + config.string());
    CHECK(r.exit_code == 1);
    const json doc = json::parse(r.out);
    CHECK(doc["violated"][0] == "M ∈ [0,1/2) fails");
  }
}

TEST_CASE("reports are byte-identical across runs") {
  TempDir dir;
  dir.write("diamond.json", kDiamond);
  const auto map = dir.write("union_a.json", kUnionA);
  const auto config = dir.write("linear.json", kLinearConfig);

  const std::string orbit_cmd =
      cli() + " fix-orbit --map " + map.string() + " --start 0 2>/dev/null";
  CHECK(run_command(orbit_cmd).out == run_command(orbit_cmd).out);

  const std::string solve_cmd =
      cli() + " urysohn-solve --config " + config.string() + " 2>/dev/null";
  const RunResult s1 = run_command(solve_cmd);
  const RunResult s2 = run_command(solve_cmd);
  CHECK(s1.out == s2.out);
  CHECK_FALSE(s1.out.empty());

  const std::string verify_cmd = cli() + " verify --n 3 2>/dev/null";
  CHECK(run_command(verify_cmd).out == run_command(verify_cmd).out);
}

TEST_CASE("unknown flags exit 2") {
  const RunResult r = run_command(cli() + " poset-check --bogus x 2>/dev/null");
  CHECK(r.exit_code == 2);
}
