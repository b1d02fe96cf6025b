#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "kil/cli.hpp"
#include "kil/io.hpp"

using namespace kil;

namespace {

struct CliOut {
  int code;
  std::string out;
  std::string err;
};

CliOut run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli_run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("klein-check subcommand") {
  CliOut r = run({"klein-check", "--p", "3"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["result"]["lines"] == 130);
  CHECK(j["result"]["k_points"] == 130);
  CHECK(j["result"]["bijection_ok"] == true);
  CHECK(j["result"]["roundtrip_ok"] == true);
  CHECK(j["result"]["meet_criterion_ok"] == true);
}

TEST_CASE("reduce exits 2 on a small field") {
  CliOut r = run({"reduce", "--p", "3", "--m", "20", "--n", "20"});
  CHECK(r.code == 2);
  Json e = Json::parse(r.err);
  CHECK(e["code"] == "SearchExhausted");
  CHECK(e["subcommand"] == "reduce");
  CHECK(e["config"]["p"] == 3);
}

TEST_CASE("reduce succeeds on a large field") {
  CliOut r = run({"reduce", "--p", "101", "--m", "12", "--n", "12", "--seed", "4"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["result"]["match"] == true);
}

TEST_CASE("tightness emits a csv row") {
  CliOut r = run({"tightness", "--n", "8"});
  REQUIRE(r.code == 0);
  auto rows = rows_from_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].statistic == "energy");
  CHECK(rows[0].value == "57169");
  CHECK(rows[0].n == 43);
  CHECK(rows[1].statistic == "zero_quadruples");
  CHECK(rows[1].value == "0");
}

TEST_CASE("validation errors exit 1 with a structured object") {
  CliOut r = run({"enumerate", "--p", "4"});
  CHECK(r.code == 1);
  Json e = Json::parse(r.err);
  CHECK(e["code"] == "NotPrime");
}

TEST_CASE("byte-identical reruns, including across thread counts") {
  std::vector<std::string> base{"incidence", "--p", "101", "--m",    "40",
                                "--n",       "30",  "--seed", "9"};
  CliOut a = run(base);
  CliOut b = run(base);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  std::vector<std::string> threaded = base;
  threaded.push_back("--threads");
  threaded.push_back("8");
  CliOut c = run(threaded);
  CHECK(a.out == c.out);  // worker count never shows up in the artifact

  CliOut d = run({"convert", "--p", "11", "--n", "10", "--seed", "3"});
  CliOut e = run({"convert", "--p", "11", "--n", "10", "--seed", "3"});
  REQUIRE(d.code == 0);
  CHECK(d.out == e.out);
  CHECK(Json::parse(d.out)["result"]["identity_ok"] == true);
}

TEST_CASE("atomic artifact writing and the report aggregator") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "kil_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::string out1 = (dir / "t8.csv").string();
  std::string out2 = (dir / "t12.csv").string();
  CHECK(run({"tightness", "--n", "8", "--out", out1}).code == 0);
  CHECK(run({"tightness", "--n", "12", "--out", out2}).code == 0);
  CHECK(fs::exists(out1));
  CHECK(!fs::exists(out1 + ".tmp"));

  CliOut rep = run({"report", out1, out2});
  REQUIRE(rep.code == 0);
  auto rows = rows_from_csv(rep.out);
  CHECK(rows.size() >= 1);

  CliOut missing = run({"report", (dir / "absent.csv").string()});
  CHECK(missing.code == 1);
  CHECK(Json::parse(missing.err)["code"] == "MissingArtifact");

  CliOut none = run({"report"});
  CHECK(none.code == 1);

  fs::remove_all(dir);
}

TEST_CASE("arrangement json round trip") {
  Fp F(101);
  CliOut r = run({"incidence", "--p", "101", "--m", "10", "--n", "10", "--seed", "1"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  Arrangement arr = arrangement_from_json(j["result"]["arrangement"], F);
  CHECK(arr.points.size() == 10);
  CHECK(arr.planes.size() == 10);
  Json back = arrangement_to_json(arr);
  CHECK(back == j["result"]["arrangement"]);
}

TEST_CASE("sl2-cover reports the full union") {
  CliOut r = run({"sl2-cover", "--p", "5", "--seed", "0"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["result"]["group_order"] == 120);
  CHECK(j["result"]["full_union"] == 120);
  CHECK(j["result"]["full_covers_group"] == true);
  CHECK(j["result"]["lines_total"] == 144);
}

TEST_CASE("golden artifacts are byte-stable") {
  auto check_golden = [&](std::vector<std::string> args, const std::string& name) {
    CliOut r = run(std::move(args));
    REQUIRE(r.code == 0);
    std::string frozen = read_file(std::string(KIL_GOLDEN_DIR) + "/" + name);
    CHECK(r.out == frozen);
  };
  check_golden({"incidence", "--p", "101", "--m", "10", "--n", "10", "--seed", "1"},
               "incidence_p101_m10_n10_seed1.json");
  check_golden({"tightness", "--n", "8"}, "tightness_n8.csv");
  check_golden({"sl2-cover", "--p", "5", "--seed", "0"}, "sl2_cover_p5_seed0.json");
}

TEST_CASE("env var budget override") {
  setenv("KIL_BUDGET_OPS", "10", 1);
  CliOut r = run({"klein-check", "--p", "5"});
  unsetenv("KIL_BUDGET_OPS");
  CHECK(r.code == 2);
  CHECK(Json::parse(r.err)["code"] == "BudgetExceeded");
}

TEST_CASE("point-set csv format") {
  Fp F(3);
  auto pts = enumerate_points(3, F);
  std::string csv = points_to_csv(pts);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# kil.v1");
  std::getline(in, line);
  CHECK(line == "0,0,0,1");  // first canonical point
  u64 rows = 1;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 40);
}

TEST_CASE("failed runs leave no artifact behind") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "kil_cli_fail";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::string out = (dir / "never.json").string();
  CliOut r = run({"reduce", "--p", "3", "--m", "20", "--n", "20", "--out", out});
  CHECK(r.code == 2);
  CHECK(!fs::exists(out));
  CHECK(!fs::exists(out + ".tmp"));
  fs::remove_all(dir);
}

TEST_CASE("every subcommand runs clean on a small instance") {
  struct Case {
    std::vector<std::string> args;
  };
  std::vector<Case> cases{
      {{"enumerate", "--p", "5"}},
      {{"klein-check", "--p", "3"}},
      {{"incidence", "--p", "101", "--m", "20", "--n", "10", "--seed", "2"}},
      {{"reduce", "--p", "101", "--m", "8", "--n", "8", "--seed", "1"}},
      {{"convert", "--p", "11", "--n", "6", "--seed", "2"}},
      {{"sl2-cover", "--p", "7", "--seed", "1"}},
      {{"bilinear", "--p", "1009", "--size", "6", "--construction", "grid"}},
      {{"bilinear", "--p", "1013", "--size", "24", "--construction", "random", "--seed", "3"}},
      {{"sumprod", "--p", "4001", "--size", "8"}},
      {{"distances", "--p", "13", "--size", "13", "--seed", "6"}},
      {{"distances", "--p", "31", "--construction", "semi-isotropic", "--m", "2", "--n", "5"}},
      {{"tightness", "--n", "10"}},
      {{"vanishing-poly", "--p", "101", "--size", "4", "--seed", "7"}},
      {{"cubic", "--p", "11"}},
  };
  for (const Case& c : cases) {
    CliOut r = run(c.args);
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    CHECK(!r.out.empty());
  }
}
