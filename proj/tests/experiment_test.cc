// Copyright 2026 The NCG Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "ncg/error.h"
#include "ncg/experiment.h"
#include "ncg/io.h"
#include "oracles.h"

namespace ncg {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const char kPathDoc[] =
    R"({"n":3,"alpha":"5","edges":[{"buyer":0,"other":1},{"buyer":1,"other":2}]})";

ErrorCode ParseError(const std::string& text) {
  try {
    ParseProfile(text);
  } catch (const NcgError& e) {
    return e.code();
  }
  FAIL("document was accepted: " << text);
  return ErrorCode::kIo;
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("ncg_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string Write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run Cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = RunCommand(args, out, err);
  return {code, out.str(), err.str()};
}

TEST_CASE("profile documents") {
  const StrategyProfile p = ParseProfile(kPathDoc);
  CHECK(p == oracle::Path3(5));
  const StrategyProfile half = ParseProfile(
      R"({"n":2,"alpha":"21/2","edges":[{"buyer":1,"other":0}]})");
  CHECK(half.alpha() == Rational(21, 2));
  CHECK(ParseProfile(R"({"n":2,"alpha":7,"edges":[]})").alpha() == Rational(7));

  CHECK(ParseError(R"({"n":3,"alpha":"5","edges":[{"buyer":2,"other":2}]})") ==
        ErrorCode::kSelfLoop);
  CHECK(ParseError(R"({"n":3,"alpha":"5","edges":[{"buyer":0,"other":3}]})") ==
        ErrorCode::kVertexOutOfRange);
  CHECK(ParseError(R"({"n":3,"alpha":"5","edges":[{"buyer":0,"other":1},{"buyer":0,"other":1}]})") ==
        ErrorCode::kDuplicateEdge);
  CHECK(ParseError(R"({"n":3,"alpha":"5","edges":[)") ==
        ErrorCode::kMalformedDocument);
  CHECK(ParseError(R"({"n":3,"edges":[]})") == ErrorCode::kMalformedDocument);
  CHECK(ParseError(R"({"n":3,"alpha":"x","edges":[]})") ==
        ErrorCode::kMalformedDocument);
  CHECK(ParseError(R"({"n":3,"alpha":"5","edges":[{"buyer":0}]})") ==
        ErrorCode::kMalformedDocument);
  CHECK(ParseError(R"([1,2])") == ErrorCode::kMalformedDocument);
}

TEST_CASE("profile round trip") {
  std::mt19937_64 rng(3);
  TempDir dir;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    StrategyProfile p =
        RandomProfile(n, 0.4, rng(), Rational(rng() % 50 + 1, rng() % 4 + 1));
    const std::string text = SerializeProfile(p);
    CHECK(ParseProfile(text) == p);
    CHECK(SerializeProfile(ParseProfile(text)) == text);
    const fs::path file = dir.path / "p.json";
    SaveProfile(p, file);
    CHECK(LoadProfile(file) == p);
  }
  CHECK_THROWS_AS(LoadProfile(dir.path / "missing.json"), NcgError);
}

TEST_CASE("dot export") {
  const std::string path = ProfileToDot(oracle::Path3(5));
  CHECK(path.find("0 -> 1;") != std::string::npos);
  CHECK(path.find("1 -> 2;") != std::string::npos);
  CHECK(std::count(path.begin(), path.end(), '>') == 2);

  const std::string both = ProfileToDot(oracle::Make(2, 1, {{0, 1}, {1, 0}}));
  CHECK(both.find("0 -> 1;") != std::string::npos);
  CHECK(both.find("1 -> 0;") != std::string::npos);

  const std::string empty = ProfileToDot(oracle::Make(3, 1, {}));
  CHECK(empty.find("->") == std::string::npos);
  CHECK(empty.find("  2;") != std::string::npos);

  TempDir dir;
  ExportDot(oracle::Path3(5), dir.path / "p.dot");
  CHECK(fs::exists(dir.path / "p.dot"));
}

TEST_CASE("alpha expressions") {
  CHECK(AlphaExpression::Parse("2n+1").Evaluate(3) == Rational(7));
  CHECK(AlphaExpression::Parse("3n").Evaluate(4) == Rational(12));
  CHECK(AlphaExpression::Parse("3n-3").Evaluate(4) == Rational(9));
  CHECK(AlphaExpression::Parse("n/2").Evaluate(3) == Rational(3, 2));
  CHECK(AlphaExpression::Parse("3n/2").Evaluate(3) == Rational(9, 2));
  CHECK(AlphaExpression::Parse("21/2").Evaluate(9) == Rational(21, 2));
  CHECK(AlphaExpression::Parse("n").Evaluate(5) == Rational(5));
  CHECK(AlphaExpression::Parse("2n + 1").Evaluate(2) == Rational(5));
  CHECK_THROWS_AS(AlphaExpression::Parse("2x"), NcgError);
  CHECK_THROWS_AS(AlphaExpression::Parse("n*2"), NcgError);
  CHECK_THROWS_AS(AlphaExpression::Parse(""), NcgError);
  CHECK_THROWS_AS(AlphaExpression::Parse("n-5").Evaluate(3), NcgError);
}

TEST_CASE("alpha regimes") {
  CHECK(ClassifyAlpha(4, 4) == AlphaRegime::kBelowN);
  CHECK(ClassifyAlpha(4, Rational(9, 2)) == AlphaRegime::kOpen);
  CHECK(ClassifyAlpha(4, 8) == AlphaRegime::kOpen);
  CHECK(ClassifyAlpha(4, 9) == AlphaRegime::kProved);
  ReportRow row;
  row.regime = AlphaRegime::kOpen;
  row.non_tree_ne_count = 3;
  CHECK_FALSE(row.ViolatesTreeProperty());
  row.regime = AlphaRegime::kProved;
  CHECK(row.ViolatesTreeProperty());
}

TEST_CASE("report rows") {
  const ReportRow row = RunCell(3, 7, DeviationClass::Exact(), {}, 1);
  CHECK(row.profiles_scanned == 27);
  CHECK(row.tree_ne_count + row.non_tree_ne_count == row.ne_count);
  CHECK(row.non_tree_ne_count == 0);
  CHECK(CsvRow(row) == "3,7,proved,27,12,12,0,,0\n");
  CHECK(CsvHeader().rfind("# ", 0) == 0);
}

TEST_CASE("cli verify") {
  TempDir dir;
  const std::string file = dir.Write("path.json", kPathDoc);
  const Run r = Cli({"verify", "--input", file, "--class", "exact"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["is_equilibrium"] == true);
  CHECK(j["schema_version"] == kSchemaVersion);

  const std::string tri = dir.Write(
      "tri.json",
      R"({"n":3,"alpha":"5","edges":[{"buyer":0,"other":1},{"buyer":1,"other":2},{"buyer":2,"other":0}]})");
  const json t = json::parse(Cli({"verify", "--input", tri, "--class", "delete"}).out);
  CHECK(t["is_equilibrium"] == false);
  CHECK(t["witness"]["delta"]["value"] == "-4");

  CHECK(Cli({"verify", "--input", file, "--budget", "2"}).code == 2);
  CHECK(Cli({"verify", "--input", (dir.path / "nope.json").string()}).code == 2);
  CHECK(Cli({"verify", "--input", file, "--bogus"}).code == 2);
  CHECK(Cli({"verify"}).code == 2);
  CHECK(Cli({"frobnicate"}).code == 2);
  const std::string bad = dir.Write("bad.json", R"({"n":3,"alpha":"5","edges":[{"buyer":2,"other":2}]})");
  const Run loop = Cli({"verify", "--input", bad});
  CHECK(loop.code == 2);
  CHECK(loop.err.find("self-loop") != std::string::npos);
}

TEST_CASE("cli enumerate") {
  const Run r = Cli({"enumerate", "--n", "3", "--alpha", "7", "--class", "exact"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\n3,7,proved,27,12,12,0,,0\n") != std::string::npos);
  TempDir dir;
  const Run dump = Cli({"enumerate", "--n", "3", "--alpha", "7", "--out",
                        (dir.path / "ne").string(), "--jobs", "2"});
  CHECK(dump.code == 0);
  int files = 0;
  for (const auto& e : fs::directory_iterator(dir.path / "ne")) {
    if (e.path().extension() == ".json") {
      ++files;
      CHECK(IsConnected(LoadProfile(e.path())));
    }
  }
  CHECK(files == 12);
  CHECK(Cli({"enumerate", "--n", "7", "--alpha", "7"}).code == 2);
}

TEST_CASE("cli sweep is deterministic") {
  const std::vector<std::string> args = {"sweep", "--n", "3,4", "--alpha",
                                         "2n+1,3n", "--class", "exact"};
  const Run a = Cli(args);
  const Run b = Cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  std::istringstream lines(a.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] != '#' && line.rfind("n,", 0) != 0) ++rows;
  }
  CHECK(rows == 4);
  std::vector<std::string> parallel = args;
  parallel.insert(parallel.end(), {"--jobs", "3"});
  CHECK(Cli(parallel).out == a.out);
  CHECK(Cli({"sweep", "--n", "3", "--alpha", "n-9"}).code == 2);
}

TEST_CASE("cli dynamics and audit") {
  TempDir dir;
  const std::string empty = dir.Write("empty.json", R"({"n":3,"alpha":"3/2","edges":[]})");
  const Run d = Cli({"dynamics", "--input", empty, "--class", "exact", "--seed",
                     "4", "--max-iters", "20", "--order", "random"});
  CHECK(d.code == 0);
  const json trace = json::parse(d.out);
  CHECK(trace["converged"] == true);
  CHECK(trace["schema_version"] == kSchemaVersion);
  CHECK(Cli({"dynamics", "--input", empty, "--class", "exact", "--seed", "4",
             "--max-iters", "20", "--order", "random"})
            .out == d.out);
  CHECK(Cli({"dynamics", "--input", empty, "--order", "sideways"}).code == 2);

  const std::string c7 = dir.Write(
      "c7.json",
      SerializeProfile(oracle::DirectedCycle(7, 15)));
  const Run a = Cli({"audit", "--input", c7, "--class", "exact"});
  CHECK(a.code == 0);
  const json report = json::parse(a.out);
  CHECK(report["findings"].size() == 13);
  CHECK(report["summary"]["failures"] == 0);
  CHECK(report["certificate"]["is_equilibrium"] == false);
}

}  // namespace
}  // namespace ncg
