#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "gplastic/verifier.hpp"

using gplastic::Json;
namespace cli = gplastic::cli;
namespace fs = std::filesystem;

namespace {

struct TempFile {
  fs::path path;
  explicit TempFile(const std::string& name, const std::string& body = "")
      : path(fs::temp_directory_path() / ("gplastic_test_" + name)) {
    std::ofstream(path) << body;
  }
  ~TempFile() { fs::remove(path); }
};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json check_file(const std::string& name, const std::string& body, int expected_code) {
  TempFile f(name, body);
  const Result r = run({"check", f.path.string()});
  CHECK(r.code == expected_code);
  return Json::parse(r.out);
}

}  // namespace

TEST_CASE("check: plastic scalar passes") {
  const Json j = check_file("rho.json",
                            R"({"chart": {"dim": 2}, "tensors": {"J": [["rho", "0"], ["0", "rho"]]},
                                "checks": ["plastic"]})",
                            cli::kPass);
  CHECK(j["verdict"] == "pass");
  CHECK(j["checks"][0]["verdict"] == "pass");
}

TEST_CASE("check: identity is not plastic") {
  const Json j = check_file("id.json",
                            R"({"chart": {"dim": 2}, "tensors": {"J": [["1", "0"], ["0", "1"]]},
                                "checks": ["plastic"]})",
                            cli::kFail);
  CHECK(j["verdict"] == "fail");
  CHECK(j["checks"][0]["residual"] == Json::parse(R"([["-1", "0"], ["0", "-1"]])"));
}

TEST_CASE("check: connection and structure checks") {
  const Json j = check_file("polar.json", R"({
      "chart": {"dim": 2, "coords": ["r", "t"]},
      "metric": [["1", "0"], ["0", "r^2"]],
      "connection": {"christoffels": [[["0", "0"], ["0", "-r"]], [["0", "1/r"], ["1/r", "0"]]]},
      "tensors": {"J1": [["rho", "0"], ["0", "rho"]], "J2": [["rho", "0"], ["0", "rho"]]},
      "checks": ["metric-parallel", "torsion-free", "quasi-statistical", "generalized-plastic",
                 "nabla-integrable", "hat-parallel", "check-parallel"]})",
                            cli::kPass);
  CHECK(j["checks"].size() == 7);
}

TEST_CASE("check: input errors carry a location") {
  TempFile bad_entry("bad_entry.json", R"({"chart": {"dim": 2}, "tensors": {"J": [["1", "0"], ["0", "1 +"]]},
                                          "checks": ["plastic"]})");
  Result r = run({"check", bad_entry.path.string()});
  CHECK(r.code == cli::kInputError);
  CHECK(r.err.find("/tensors/J/1/1") != std::string::npos);

  TempFile bad_json("bad_json.json", "{\"chart\": ");
  r = run({"check", bad_json.path.string()});
  CHECK(r.code == cli::kInputError);
  CHECK(r.err.find("line") != std::string::npos);

  r = run({"check", (fs::temp_directory_path() / "gplastic_test_missing.json").string()});
  CHECK(r.code == cli::kInputError);

  TempFile unknown("unknown.json", R"({"chart": {"dim": 2}, "checks": ["frobnicate"]})");
  CHECK(run({"check", unknown.path.string()}).code == cli::kInputError);
}

TEST_CASE("classify") {
  Result r = run({"classify", "rho,0;0,rho"});
  CHECK(r.code == cli::kPass);
  Json j = Json::parse(r.out);
  CHECK(j["plastic"] == true);
  CHECK(j["branch"] == "scalar");

  r = run({"classify", "0, 1-rho^2; 1, -rho"});
  j = Json::parse(r.out);
  CHECK(j["branch"] == "conjugate");
  CHECK(j["C"] == Json::parse(R"([["1", "-rho"], ["0", "1"]])"));
  CHECK(j["B"] == Json::parse(R"([["-rho", "1 - rho^2"], ["1", "0"]])"));

  r = run({"classify", "1,0;0,1"});
  CHECK(r.code == cli::kPass);
  CHECK(Json::parse(r.out)["plastic"] == false);

  CHECK(run({"classify", "1,0;0"}).code == cli::kInputError);
  CHECK(run({"classify", "1,0;0,x"}).code == cli::kInputError);
}

TEST_CASE("suite command") {
  Result r = run({"suite", "m15-cubic", "--trials", "10", "--seed", "7"});
  CHECK(r.code == cli::kPass);
  Json j = Json::parse(r.out);
  CHECK(j["suite"] == "m15-cubic");
  CHECK(j["verdict"] == "pass");
  CHECK(j["trials"] == 10);

  CHECK(run({"suite", "no-such-suite"}).code == cli::kInputError);
  CHECK(run({"suite", "m10-cubic", "--dim", "7"}).code == cli::kInputError);
  CHECK(run({"suite", "m10-cubic", "--trials", "0"}).code == cli::kInputError);
  CHECK(run({"frobnicate"}).code == cli::kInputError);
}

TEST_CASE("output flag writes the report to a file") {
  TempFile out("report.json");
  const Result r = run({"suite", "m20-form", "--trials", "3", "--output", out.path.string()});
  CHECK(r.code == cli::kPass);
  CHECK(r.out.empty());
  std::ifstream in(out.path);
  const Json j = Json::parse(in);
  CHECK(j["suite"] == "m20-form");
}
