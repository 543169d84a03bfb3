#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "levelset/cli.hpp"

using nlohmann::json;
namespace cli = levelset::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args, int expected_code) {
  args.push_back("--json");
  const auto r = run(args);
  REQUIRE_MESSAGE(r.code == expected_code, r.err);
  return json::parse(r.out);
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("analyze exit codes and verdicts") {
  const auto ex1 = run_json({"analyze", "--example", "ex1"}, cli::kUnique);
  CHECK(ex1["certificate"]["verdict"] == "unique");
  CHECK(ex1["certificate"]["rank"] == 8);
  CHECK(ex1["range"]["arithmetic_progression"] == false);

  const auto ex2 = run_json({"analyze", "--example", "ex2-mu-prime"}, cli::kNonUnique);
  CHECK(ex2["listed_witness"]["atoms"] == json::array({"1", "2", "6", "7"}));

  const auto pair = run_json({"analyze", R"({"atoms":["3","5"],"kappa":"0"})"}, cli::kNonUnique);
  CHECK(pair["certificate"]["rank"] == 0);
  CHECK(pair["certificate"]["basis"].empty());
}

TEST_CASE("input errors exit 2 with a location") {
  for (const char* bad : {R"({"atoms":["1/0"]})", R"({"atoms":["1","0"]})", R"({"atoms":["1"],"kappa":"-1"})",
                          R"({"atoms":["1",)", R"({"atoms":["1.5"]})"}) {
    CAPTURE(bad);
    const auto r = run({"analyze", bad});
    CHECK(r.code == cli::kInputError);
    CHECK(r.err.find("error:") != std::string::npos);
  }
  CHECK(run({"analyze", R"({"atoms":["1",0]})"}).err.find("atoms[1]") != std::string::npos);
  CHECK(run({"analyze", R"({"atoms":["1",}")"}).err.find("byte") != std::string::npos);
  CHECK(run({"analyze", "/nonexistent/measure.json"}).code == cli::kInputError);
  CHECK(run({"analyze"}).code == cli::kInputError);
  CHECK(run({"analyze", "--example", "ex9"}).code == cli::kInputError);
  CHECK(run({"bogus"}).code == cli::kInputError);
  CHECK(run({"analyze", "--example", "ex1", "--strategy", "fast"}).code == cli::kInputError);
}

TEST_CASE("resource limits exit 3") {
  CHECK(run({"analyze", "--example", "ex1", "--limit-n", "5"}).code == cli::kResourceLimit);
  CHECK(run({"analyze", "--example", "ex1", "--strategy", "direct", "--limit-n", "40"}).code == cli::kUnique);
  ::setenv("LEVELSET_MAX_N", "4", 1);
  CHECK(run({"analyze", "--example", "ex1"}).code == cli::kResourceLimit);
  CHECK(run({"analyze", "--example", "ex1", "--limit-n", "9"}).code == cli::kUnique);
  ::setenv("LEVELSET_MAX_N", "nine", 1);
  CHECK(run({"analyze", "--example", "ex1"}).code == cli::kInputError);
  ::unsetenv("LEVELSET_MAX_N");
  std::string many = R"({"atoms":[)";
  for (int i = 1; i <= 15; ++i) many += std::string(i > 1 ? "," : "") + "\"" + std::to_string(i) + "\"";
  many += "]}";
  CHECK(run({"analyze", many, "--oracle"}).code == cli::kResourceLimit);
}

TEST_CASE("oracle cross-checks agree on the built-in examples") {
  for (const char* id : {"ex1", "ex2-mu", "ex2-mu-prime", "ex3-mu", "ex3-mu-prime", "ex4:3"}) {
    CAPTURE(id);
    const auto r = run({"analyze", "--example", id, "--oracle"});
    CHECK((r.code == cli::kUnique || r.code == cli::kNonUnique));
    CHECK(r.out.find("cross-check agreed") != std::string::npos);
  }
  CHECK(run({"relations", "--example", "ex3-mu", "--oracle"}).code == cli::kPass);
  CHECK(run({"range", "--example", "ex4:4", "--oracle"}).code == cli::kPass);
}

TEST_CASE("check reports violations in input order") {
  const auto pass = run({"check", "--example", "ex2-mu-prime", "--nu", R"(["1","2","6","7"])", "--mode", "O"});
  CHECK(pass.code == cli::kPass);
  const auto fail = run_json({"check", "--example", "ex2-mu-prime", "--nu", R"(["1","2","6","8"])"}, cli::kFail);
  CHECK(fail["holds"] == false);
  CHECK(fail["violation"]["first"] == json::array({0, 2}));
  CHECK(fail["violation"]["second"] == json::array({3}));
  const auto text = run({"check", "--example", "ex2-mu-prime", "--nu", R"(["1","2","6","8"])"});
  CHECK(text.out.find("{a1, a3} vs {a4}") != std::string::npos);
  CHECK(run({"check", "--example", "ex1", "--nu", R"(["2","4","10","12","14","16","18","20","22"])", "--mode", "O"}).code ==
        cli::kPass);
  CHECK(run({"check", "--example", "ex2-mu-prime", "--nu", R"(["1","2"])"}).code == cli::kInputError);
  CHECK(run({"check", "--example", "ex3-mu-prime", "--nu", R"({"atoms":["2","6","7"],"slope":"1"})"}).code == cli::kPass);
  CHECK(run({"check", "--example", "ex3-mu-prime", "--nu", R"(["2","6","7"])", "--mode", "O"}).code == cli::kInputError);
}

TEST_CASE("check on signed measures goes through the transform") {
  // nu = mu is always admissible; nu' = |mu| on the absolute measure.
  CHECK(run({"check", "--example", "ex4:2", "--nu", R"(["2/3","-2/3","2/9","-2/9"])", "--mode", "O"}).code == cli::kPass);
  CHECK(run({"check", "--example", "ex4:2", "--nu", R"(["2/3","2/3","2/9","2/9"])"}).code == cli::kFail);
}

TEST_CASE("range and bullies") {
  const auto ex3 = run_json({"range", "--example", "ex3-mu"}, cli::kPass);
  CHECK(ex3["summary"]["range"]["intervals"] ==
        json::parse(R"([["0","1"],["2","3"],["4","8"],["9","10"],["11","12"]])"));
  const auto empty = run_json({"range", R"({"atoms":[],"kappa":"1"})"}, cli::kPass);
  CHECK(empty["summary"]["range"]["intervals"] == json::parse(R"([["0","1"]])"));
  CHECK(empty["is_interval"] == true);
  const auto grid = run_json({"range", "--example", "ex4:2"}, cli::kPass);
  CHECK(grid["point_count"] == 9);
  CHECK(grid["spacing"] == "2/9");
  CHECK(grid["truncation_depth"] == 2);

  const auto b = run_json({"bullies", "--example", "ex4:4", "--part", "positive"}, cli::kPass);
  CHECK(b["bullies"] == json::array({0, 2, 4, 6}));
  CHECK(b["truncation_depth"] == 4);
  CHECK(run_json({"bullies", "--example", "ex4:4", "--part", "negative"}, cli::kPass)["bullies"] == json::array({1, 3, 5, 7}));
  CHECK(run({"bullies", "--example", "ex1", "--part", "negative"}).code == cli::kInputError);
  const auto dyadic = run_json({"bullies", R"({"atoms":["1/8","1/2","1/4"],"kappa":"1/8"})"}, cli::kPass);
  CHECK(dyadic["no_bullies"] == true);
}

TEST_CASE("relations are listed in input order") {
  const auto r = run_json({"relations", "--example", "ex2-mu-prime"}, cli::kPass);
  CHECK(r["relations"] == json::array({"+0+-", "+--+"}));
  CHECK(r["rank"] == 2);
  CHECK(r["threshold"] == 3);
  const auto b = run_json({"relations", "--example", "ex1", "--basis-only"}, cli::kPass);
  CHECK(b["rank"] == 8);
  CHECK(b["basis"].size() == 8);
}

TEST_CASE("examples and constructions") {
  CHECK(run({"example", "ex2-mu-prime"}).out == "{\"atoms\":[\"1\",\"2\",\"4\",\"5\"],\"kappa\":\"0\"}\n");
  CHECK(run({"example", "ex4:1"}).out == "{\"signed_atoms\":[\"2/3\",\"-2/3\"]}\n");
  CHECK(run_json({"example", "ex4:2"}, cli::kPass)["truncation_depth"] == 2);
  const auto g = run_json({"construct", "geometric", "--ratio", "1/3", "--count", "4", "--scale", "2"}, cli::kPass);
  CHECK(g["measure"]["atoms"] == json::array({"2/3", "2/9", "2/27", "2/81"}));
  CHECK(g["bullies"].size() == 4);
  CHECK(run({"construct", "geometric", "--ratio", "3/2", "--count", "4"}).code == cli::kInputError);
  const auto l = run_json({"construct", "lemma31", "--harmonic", "500", "--target", "3"}, cli::kPass);
  CHECK(l["blocks"][0].size() == 11);
  CHECK(l["audit"]["a"] == true);
  CHECK(run({"construct", "lemma31", "--masses", R"(["1/2","1/4"])", "--target", "1"}).code == cli::kInputError);
  const auto file = temp_file("levelset_masses.json", R"(["1","1/2","1/3","1/4","1/5","1/6","1/7","1/8"])");
  CHECK(run({"construct", "lemma31", "--masses", file.string(), "--target", "1"}).code == cli::kPass);
}

TEST_CASE("measure files and --out") {
  const auto in = temp_file("levelset_measure.json", R"({"atoms": ["1", "2", "4", "5"]})");
  const auto out = std::filesystem::temp_directory_path() / "levelset_report.json";
  std::filesystem::remove(out);
  const auto r = run({"analyze", in.string(), "--json", "--out", out.string()});
  CHECK(r.code == cli::kNonUnique);
  CHECK(r.out.empty());
  std::ifstream f(out);
  const auto j = json::parse(f);
  CHECK(j["source"] == in.string());
  CHECK(j["certificate"]["verdict"] == "non_unique");
}

TEST_CASE("JSON output is byte-stable") {
  for (const char* id : {"ex1", "ex2-mu", "ex2-mu-prime", "ex3-mu", "ex3-mu-prime", "ex4:3"}) {
    const auto a = run({"analyze", "--example", id, "--json"});
    const auto b = run({"analyze", "--example", id, "--json"});
    CHECK(a.out == b.out);
    CHECK(a.out.find("elapsed_ms") == std::string::npos);
  }
  CHECK(run({"analyze", "--example", "ex1", "--json", "--timing"}).out.find("elapsed_ms") != std::string::npos);
}

TEST_CASE("selftest") {
  const auto r = run({"selftest"});
  CHECK(r.code == cli::kPass);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(run({"--help"}).code == 0);
}
