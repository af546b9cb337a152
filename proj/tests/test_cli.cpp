#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

using json = nlohmann::json;
using Catch::Approx;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = uvest::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_input(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("uvest_cli_" + name + ".csv");
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST_CASE("estimate", "[cli]") {
  const auto both_two = write_input("two_two", "value\n2\n2\n");
  auto r = run({"estimate", "--family", "poisson", "--threshold", "1", "--input", both_two, "--json"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["n"] == 2);
  CHECK(j["v"] == 4.0);
  CHECK(j["v_star"] == 0.0);
  CHECK(j["zeroed_set_hit"] == true);
  CHECK(j["direction"] == "le");

  const auto mixed = write_input("one_two", "value\n1\n\n2\n");
  j = json::parse(run({"estimate", "--family", "poisson", "--threshold", "1", "--input", mixed, "--json"}).out);
  CHECK(j["v"] == 3.0);
  CHECK(j["v_star"] == 3.0);
  CHECK(j["zeroed_set_hit"] == false);

  const auto zeros = write_input("zeros", "value\n0\n0\n");
  for (std::string fam : {"poisson", "geometric", "exponential", "uniform"}) {
    j = json::parse(run({"estimate", "--family", fam, "--threshold", "1", "--input", zeros, "--json"}).out);
    CHECK(j["v"] == 0.0);
    CHECK(j["v_star"] == 0.0);
  }

  SECTION("gt direction omits v_star") {
    const auto f = write_input("gt", "value\n5\n1\n");
    r = run({"estimate", "--family", "poisson", "--threshold", "1", "--direction", "gt", "--input", f, "--json"});
    REQUIRE(r.code == 0);
    j = json::parse(r.out);
    CHECK(j["v"] == 5.0);
    CHECK_FALSE(j.contains("v_star"));
    CHECK_FALSE(j.contains("zeroed_set_hit"));
  }

  SECTION("human output") {
    r = run({"estimate", "--family", "poisson", "--threshold", "1", "--input", both_two});
    CHECK(r.code == 0);
    CHECK(r.out.find("v_star=0") != std::string::npos);
  }

  SECTION("malformed input exits 2") {
    for (const auto& body : {"value\nabc\n", "value\n-1\n", "value\n1.5\n", "value\n", "number\n1\n"}) {
      const auto f = write_input("bad", body);
      CHECK(run({"estimate", "--family", "poisson", "--threshold", "1", "--input", f}).code == 2);
    }
    CHECK(run({"estimate", "--family", "poisson", "--threshold", "1", "--input", "/nonexistent/x.csv"}).code == 2);
    CHECK(run({"estimate", "--family", "bogus", "--threshold", "1", "--input", both_two}).code == 2);
    CHECK(run({"estimate", "--family", "poisson", "--threshold", "-1", "--input", both_two}).code == 2);
  }

  SECTION("continuous families accept reals") {
    const auto f = write_input("reals", "value\n0.5\n3.25\n");
    j = json::parse(run({"estimate", "--family", "uniform", "--threshold", "1", "--input", f, "--json"}).out);
    CHECK(j["v"] == 2.0);
  }

  SECTION("unsupported direction exits 3") {
    CHECK(run({"estimate", "--family", "geometric", "--threshold", "1", "--direction", "gt", "--input", both_two})
              .code == 3);
  }
}

TEST_CASE("table1", "[cli]") {
  const auto csv = run({"table1"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("A,1,2,3,4,5,6,7,8,9,10\n1,1.083,1.872,", 0) == 0);
  CHECK(run({"table1", "--format", "csv"}).out == csv.out);

  const auto js = run({"table1", "--format", "json"});
  REQUIRE(js.code == 0);
  const auto j = json::parse(js.out);
  REQUIRE(j["cells"].size() == 50);
  CHECK(j["cells"][0]["A"] == 1.0);
  CHECK(j["cells"][0]["n"] == 1);
  CHECK(j["cells"][0]["improvement"].get<double>() == Approx(8.0 * std::exp(-2.0)).epsilon(1e-15));
  CHECK(run({"table1", "--format", "json"}).out == js.out);
  CHECK(run({"table1", "--format", "xml"}).code == 2);
}

TEST_CASE("improvement-table", "[cli]") {
  const auto r = run({"improvement-table", "--family", "exponential", "--theta", "1", "--thresholds", "1",
                      "--n", "1,2"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "A,1,2\n1,0.367879,0.541341\n");
  CHECK(run({"improvement-table", "--family", "geometric", "--theta", "2"}).code == 2);
}

TEST_CASE("risk", "[cli]") {
  auto r = run({"risk", "--family", "poisson", "--theta", "2", "--threshold", "1"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["method"] == "exact");
  CHECK(j["risk_v"].get<double>() == Approx(14.0 * std::exp(-2.0)).epsilon(1e-12));
  CHECK(j["improvement"].get<double>() == Approx(8.0 * std::exp(-2.0)).epsilon(1e-12));
  CHECK(j["risk_v_star"].get<double>() == Approx(6.0 * std::exp(-2.0)).epsilon(1e-12));

  j = json::parse(run({"risk", "--family", "exponential", "--theta", "1", "--threshold", "1"}).out);
  CHECK(j["improvement"].get<double>() == Approx(std::exp(-1.0)).epsilon(1e-12));

  j = json::parse(run({"risk", "--family", "exponential", "--theta", "1,2", "--threshold", "0"}).out);
  CHECK(j["risk_v"] == 0.0);
  CHECK(j["risk_v_star"] == 0.0);
  CHECK(j["improvement"] == 0.0);
  CHECK(j["n"] == 2);

  CHECK(run({"risk", "--family", "poisson", "--theta", "2", "--threshold", "1", "--loss", "absolute"}).code == 3);
  CHECK(run({"risk", "--family", "poisson", "--theta", "2", "--threshold", "1", "--direction", "gt"}).code == 3);
  CHECK(run({"risk", "--family", "geometric", "--theta", "1.5", "--threshold", "1"}).code == 2);
  CHECK(run({"risk", "--family", "poisson", "--theta", "2,x", "--threshold", "1"}).code == 2);
}

TEST_CASE("simulate", "[cli]") {
  const std::vector<std::string> args{"simulate", "--family", "poisson", "--theta", "2,2", "--threshold", "1",
                                      "--reps", "20000", "--seed", "9", "--predict"};
  const auto a = run(args);
  REQUIRE(a.code == 0);
  CHECK(run(args).out == a.out);
  const auto j = json::parse(a.out);
  CHECK(j["method"] == "monte_carlo");
  CHECK(j["seed"] == 9);
  CHECK(j["replicates"] == 20000);
  CHECK(j["target"] == "prediction");
  CHECK(j["max_paired_difference"].get<double>() <= 0.0);
  CHECK(j.contains("std_error"));

  CHECK(run({"simulate", "--family", "poisson", "--theta", "2", "--threshold", "1", "--reps", "1"}).code == 2);
  CHECK(run({"simulate", "--family", "poisson", "--theta", "2", "--threshold", "1", "--loss", "cubic"}).code == 2);
  CHECK(run({"simulate", "--family", "poisson", "--theta", "0", "--threshold", "1"}).code == 2);
}

TEST_CASE("dominance", "[cli]") {
  auto r = run({"dominance", "--family", "poisson", "--threshold", "1", "-n", "2", "--xmax", "30"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["violations"] == 0);

  r = run({"dominance", "--family", "geometric", "--threshold", "1", "-n", "1", "--xmax", "50"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["strict_points"] == 49);

  r = run({"dominance", "--family", "exponential", "--threshold", "1", "-n", "2", "--samples", "100000", "--seed",
           "4"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["violations"] == 0);

  CHECK(run({"dominance", "--family", "exponential", "--threshold", "1", "-n", "2", "--xmax", "5"}).code == 2);
  CHECK(run({"dominance", "--family", "poisson", "--threshold", "1", "-n", "4", "--xmax", "5"}).code == 2);
  CHECK(run({"dominance", "--family", "poisson", "--threshold", "1", "-n", "2"}).code == 2);
  CHECK(run({"dominance", "--family", "poisson", "--threshold", "1", "-n", "2", "--xmax", "3", "--samples", "3"})
            .code == 2);
}

TEST_CASE("usage errors", "[cli]") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
