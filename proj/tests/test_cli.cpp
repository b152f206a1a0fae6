#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using qgrp::cli::run;
using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string example(const char* name) { return std::string(QGRP_SOURCE_DIR) + "/docs/examples/" + name; }

std::filesystem::path temp_dir() {
  auto d = std::filesystem::temp_directory_path() / ("qgrp-cli-" + std::to_string(std::random_device()()));
  std::filesystem::create_directories(d);
  return d;
}

std::string write_file(const std::filesystem::path& dir, const char* name, const std::string& text) {
  std::ofstream(dir / name) << text;
  return (dir / name).string();
}

}  // namespace

TEST_CASE("check-hnn on K is not hyperbolic") {
  Run r = call({"--json", "check-hnn", example("k.json")});
  CHECK(r.code == 1);
  Json j = r.json();
  CHECK(j["outcome"] == "not-hyperbolic");
  CHECK(j["citation"] == "Corollary 1");
  CHECK(j["relation"]["free_abelian"] == true);
}

TEST_CASE("construction verdicts and exit codes") {
  CHECK(call({"check-hnn", example("bs23.json")}).out == "not-hyperbolic (Corollary 1)\n");
  CHECK(call({"check-amalgam", example("torus_knot.json")}).code == 1);
  Run r = call({"check-hnn", example("free_hnn.json")});
  CHECK(r.code == 0);
  CHECK(r.out == "hyperbolic (Theorem 1; Corollary 5)\n");
  // Non-cyclic, neither side malnormal: inconclusive.
  auto dir = temp_dir();
  std::string f = write_file(dir, "inc.json", R"({"kind":"amalgam","left":"ab","right":"cd",
    "u":["aa","b"],"v":["cc","d"]})");
  r = call({"--json", "check-amalgam", f});
  CHECK(r.code == 2);
  CHECK(r.json()["outcome"] == "hypotheses-fail-inconclusive");
  CHECK(r.json()["unavailable"].size() == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("qword equal and normalize") {
  CHECK(call({"qword", "equal", "a^(2/2)", "a"}).code == 0);
  CHECK(call({"qword", "equal", "a^(1/2)", "b^(1/2)"}).code == 1);
  Run r = call({"qword", "normalize", "--json", "(bab^(-1))^(1/2)", "a^(1/4)"});
  REQUIRE(r.code == 0);
  Json j = r.json();
  CHECK(j["results"][0]["normal_form"] == "ba^(1/2)B");
  CHECK(j["results"][0]["level"] == 2);
  CHECK(j["results"][0]["depth"] == 2);
  CHECK(j["results"][1]["level"].is_null());
}

TEST_CASE("qword conj, exact and bounded") {
  Run r = call({"--json", "qword", "conj", "b a^(1/2) b^(-1)", "a^(1/2)"});
  CHECK(r.code == 0);
  CHECK(r.json()["conjugator"] == "b");
  CHECK(call({"qword", "conj", "a", "b"}).code == 1);
  r = call({"--json", "qword", "conj", "--k-bound", "3", "(ba)^(1/2)", "(ab)^(1/2)"});
  CHECK(r.code == 0);
  CHECK(r.json()["method"] == "bounded");
  CHECK(r.json()["level"] == 2);
  // Beyond the level cap.
  r = call({"--json", "qword", "conj", "--k-bound", "3", "a^(1/4)", "a^(1/4)"});
  CHECK(r.code == 2);
  CHECK(r.json()["error"]["code"] == "resource");
}

TEST_CASE("vn list and tower show") {
  Run r = call({"--json", "vn", "list", "--base", "ab", "--n", "2"});
  REQUIRE(r.code == 0);
  std::vector<std::string> els;
  Json listed = r.json();
  for (const Json& e : listed["entries"]) els.push_back(e["element"].get<std::string>());
  CHECK(els == std::vector<std::string>{"a", "b", "ab", "aB"});
  CHECK(call({"vn", "list", "--n", "1"}).out == "a\nb\n");
  r = call({"tower", "show", "--n", "2"});
  CHECK(r.out.rfind("generators: a b w2_1 w2_2 w2_3 w2_4\n", 0) == 0);
  r = call({"--json", "tower", "show", example("tower.json")});
  CHECK(r.json()["relations"] == Json::array({"ab = w^2", "(ab)^(1/2)a = u^3"}));
  r = call({"--json", "vn", "list", "--n", "5"});
  CHECK(r.code == 2);
  CHECK(r.json()["error"]["code"] == "resource");
  CHECK(call({"--max-level", "5", "vn", "list", "--n", "0"}).code == 3);
}

TEST_CASE("word and subgroup commands") {
  CHECK(call({"word", "reduce", "aAbab"}).out == "bab\n");
  Run r = call({"--json", "word", "reduce", "Abba"});
  CHECK(r.json()["cyclic_core"] == "bb");
  CHECK(call({"word", "conj", "ab", "ba"}).out == "conjugate a\n");
  CHECK(call({"word", "conj", "ab", "aB"}).code == 1);
  CHECK(call({"word", "root", "abab"}).out == "root ab, exponent 2\n");
  CHECK(call({"word", "root", "1"}).code == 3);
  CHECK(call({"word", "area", "aaaaaa", "-r", "aaa"}).out == "area 2\n");
  r = call({"--area-bound", "1", "--json", "word", "area", "aaaaaa", "-r", "aaa"});
  CHECK(r.code == 2);
  CHECK(r.json()["area"].is_null());
  CHECK(call({"subgroup", "member", "-g", "aa", "-g", "b", "aabAA"}).code == 0);
  CHECK(call({"subgroup", "member", "-g", "aa", "-g", "b", "ab"}).code == 1);
  CHECK(call({"subgroup", "malnormal", "a", "b"}).code == 0);
  CHECK(call({"subgroup", "malnormal", "aa"}).code == 1);
  CHECK(call({"subgroup", "qc-const", "ab"}).out == "1\n");
  r = call({"--json", "subgroup", "build", "aa", "b"});
  CHECK(r.json()["rank"] == 2);
  CHECK(r.json()["vertices"] == 2);
}

TEST_CASE("input errors carry distinct codes") {
  auto dir = temp_dir();
  Run r = call({"--json", "qword", "normalize", "(a"});
  CHECK(r.code == 3);
  CHECK(r.json()["error"]["code"] == "parse");
  CHECK(r.json()["error"]["position"] == 2);
  r = call({"--json", "check-hnn", write_file(dir, "s.json", R"({"kind":"hnn","alphabet":"ab","u":"aa","v":["bb"]})")});
  CHECK(r.code == 3);
  CHECK(r.json()["error"]["code"] == "schema");
  CHECK(r.json()["error"]["pointer"] == "/u");
  r = call({"--json", "check-hnn", write_file(dir, "k.json", R"({"kind":"hnn","alphabet":"ab","u":["aa"],"v":["bb"],"x":1})")});
  CHECK(r.json()["error"]["pointer"] == "/x");
  r = call({"--json", "check-amalgam", example("k.json")});
  CHECK(r.json()["error"]["code"] == "schema");
  r = call({"--json", "check-hnn", write_file(dir, "j.json", "{\"kind\": ")});
  CHECK(r.code == 3);
  CHECK(r.json()["error"]["code"] == "parse");
  r = call({"--json", "check-hnn", write_file(dir, "i.json", R"({"kind":"hnn","alphabet":"ab","u":["a","b"],"v":["a","a"]})")});
  CHECK(r.code == 3);
  CHECK(r.json()["error"]["code"] == "domain");
  r = call({"--json", "tower", "show", write_file(dir, "t.json", R"({"kind":"tower","alphabet":"ab","steps":[{"v":"aa","m":2}]})")});
  CHECK(r.json()["error"]["code"] == "domain");
  r = call({"--json", "check-hnn", (dir / "missing.json").string()});
  CHECK(r.json()["error"]["code"] == "file");
  r = call({"--json", "qword", "frobnicate"});
  CHECK(r.code == 3);
  CHECK(r.json()["error"]["code"] == "usage");
  r = call({"word", "reduce", "abc", "--alphabet", "ab"});
  CHECK(r.code == 3);
  CHECK(r.err.rfind("error [parse]", 0) == 0);
  CHECK(call({"--help"}).code == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("expressions from files") {
  auto dir = temp_dir();
  std::string f = write_file(dir, "exprs.txt", "a^(1/2)a^(1/2)\n\n(ab)^(3/2)\n");
  Run r = call({"qword", "normalize", "@" + f});
  CHECK(r.out == "a\tlevel 0\n(ab)^(1/2)ab\tlevel 2\n");
  std::string g = write_file(dir, "pair.txt", "a^(2/2)\na\n");
  CHECK(call({"qword", "equal", "@" + g}).code == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("repeated runs are byte-identical") {
  std::vector<std::vector<std::string>> cmds = {
      {"--json", "check-hnn", example("k.json")},
      {"--json", "check-amalgam", example("torus_knot.json")},
      {"--json", "vn", "list", "--n", "3"},
      {"--json", "qword", "normalize", "(a^(1/2)b)^(2/3)", "(ba)^(1/2)"},
      {"--json", "qword", "conj", "(ba)^(1/2)", "(ab)^(1/2)"},
      {"--json", "subgroup", "build", "aab", "bA"},
  };
  for (const auto& c : cmds) CHECK(call(c).out == call(c).out);
}

TEST_CASE("cache directory from the environment") {
  auto dir = temp_dir();
  ::setenv(qgrp::cli::kCacheEnv, dir.c_str(), 1);
  Run first = call({"--json", "vn", "list", "--n", "3"});
  CHECK(std::filesystem::exists(dir / "V3-ab.txt"));
  Run second = call({"--json", "vn", "list", "--n", "3"});
  ::unsetenv(qgrp::cli::kCacheEnv);
  CHECK(first.out == second.out);
  CHECK(first.out == call({"--json", "vn", "list", "--n", "3"}).out);
  std::filesystem::remove_all(dir);
}
