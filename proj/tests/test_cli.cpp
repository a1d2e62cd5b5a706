#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "qmk/cli.hpp"

using qmk::cli::run;
using nlohmann::json;

namespace {

json run_json(const std::vector<std::string>& args) {
  auto r = run(args);
  REQUIRE_MESSAGE(r.exit_code == 0, r.err);
  return json::parse(r.out);
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("question mark commands") {
  json a = run_json({"qm", "eval", "1/3"});
  CHECK(a["value"] == "1/4");
  CHECK(a["dyadic"] == true);
  CHECK(a["binary"] == "0.01");
  CHECK(run_json({"qm", "eval", "sqrt(2)-1"})["value"] == "2/5");
  CHECK(run_json({"qm", "inv", "3/8"})["value"] == "2/5");
  CHECK(run_json({"qm", "classify", "sqrt(3)-1"})["image"] == "NonDyadicRational");

  auto s = run({"sample", "--count", "3"});
  CHECK(s.exit_code == 0);
  CHECK(s.out == "x,qm,qm_approx\n0,0,0\n1/2,1/2,0.5\n1,1,1\n");
}

TEST_CASE("continued fraction and Jacobi-Perron commands") {
  json cf = run_json({"cf", "expand", "sqrt(2)-1"});
  CHECK(cf["cf"] == "[0; (2)]");
  CHECK(cf["convergents"][2] == "2/5");
  CHECK(run_json({"cf", "value", "[0; 2, 2]"})["value"] == "2/5");

  json jp = run_json({"jp", "expand", "3/7,2/7", "--steps", "5"});
  CHECK(jp["digits"] == json::parse(R"([["0","2"],["0","1"],["1","2"]])"));
  CHECK(jp["final_convergent"] == json::parse(R"(["3/7","2/7"])"));
  CHECK(jp["terminated"] == true);
}

TEST_CASE("block and K0 commands") {
  json b = run_json({"blocks", "encode", "sqrt(2)-1", "--surface", "1,1", "--count", "5"});
  CHECK(b["blocks"] == json::parse("[[1,1,0],[1,1,1],[1,1,1],[1,1,0],[1,1,0]]"));
  CHECK(b["preperiod"] == 1);
  CHECK(b["period_length"] == 4);
  CHECK(b["tail"] == "periodic");

  json k = run_json({"k0", "matrix", "--file", temp_file("qmk_ones3.json", "[[1,1,1],[1,1,1],[1,1,1]]")});
  CHECK(k["group"] == "Z/2");
  CHECK(k["flags"]["hypothesis_holds"] == true);
  json c = run_json({"k0", "matrix", "--file", temp_file("qmk_snf.json", "[[2,4],[6,8]]")});
  CHECK(c["group"] == "Z/2 + Z/4");
  CHECK(run_json({"k0", "blocks", "sqrt(2)-1", "--surface", "1,1", "--trunc", "5"})["group"] == "Z/2 + Z/2");

  json r = run_json({"classify", "2/5", "--surface", "1,1"});
  CHECK(r["consistent"] == true);
  CHECK(r["image_value"] == "3/8");
}

TEST_CASE("cluster commands") {
  json m = run_json({"cluster", "mutate", "--rank", "2", "--b", "[[0,1],[-1,0]]", "--path", "1,2"});
  CHECK(m["variables"][0] == "x1^-1 + x1^-1*x2");
  json o = run_json({"cluster", "orbit", "--rank", "2", "--b", "[[0,1],[-1,0]]", "--depth", "8"});
  CHECK(o["count"] == 5);
  CHECK(o["non_laurent"] == 0);
}

TEST_CASE("output is deterministic") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"qm", "eval", "(sqrt(5)-1)/2"},
           {"jp", "expand", "sqrt(2)-1,sqrt(3)-1", "--steps", "8"},
           {"cluster", "orbit", "--rank", "3", "--b", "[[0,1,0],[-1,0,1],[0,-1,0]]", "--depth", "6"}}) {
    auto first = run(args);
    auto second = run(args);
    CHECK(first.exit_code == 0);
    CHECK(first.out == second.out);
  }
}

TEST_CASE("errors exit nonzero") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"qm", "eval", "2"},
           {"qm", "eval", "1/0"},
           {"cf", "value", "[0; 0]"},
           {"jp", "expand", "3/2"},
           {"blocks", "encode", "1/3", "--surface", "0,3"},
           {"k0", "matrix", "--file", "/nonexistent/qmk.json"},
           {"cluster", "mutate", "--rank", "2", "--b", "[[0,1],[1,0]]", "--path", "1"},
           {"cluster", "mutate", "--rank", "2", "--b", "[[0,1],[-1,0]]", "--path", "3"},
           {"bogus"},
           {}}) {
    auto r = run(args);
    CHECK(r.exit_code != 0);
    CHECK_FALSE(r.err.empty());
  }
}
