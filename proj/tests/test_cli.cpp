// Copyright 2026 The Tsirelson Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "tsirelson/json_io.hpp"

using namespace tsirelson;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  io::Json json() const { return io::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  args.insert(args.begin(), "tsirelson");
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "tsirelson-cli-test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST_CASE("norm") {
  CHECK(run({"norm", "--coords", "2:1,3:1"}).json()["norm"] == "1");
  CHECK(run({"norm", "--coords", "5:1"}).json()["norm"] == "1");
  CHECK(run({"norm", "--coords", ""}).json()["norm"] == "0");
  Run w = run({"norm", "--coords", "2:1,3:-1/2", "--witness"});
  CHECK(w.code == 0);
  CHECK(w.json().contains("witness"));
  CHECK(w.json()["config"]["witness"] == true);
}

TEST_CASE("config is echoed") {
  io::Json j = run({"--seed", "5", "norm", "--coords", "2:1"}).json();
  CHECK(j["config"]["seed"] == 5);
  CHECK(j["config"]["command"] == "norm");
  CHECK(j["config"]["space"]["ladder"] == "S");
  Run csv = run({"--format", "csv", "norm", "--coords", "2:1"});
  CHECK(csv.out.rfind("# config: {", 0) == 0);
}

TEST_CASE("averages") {
  io::Json j = run({"scc", "--n", "1", "--eps", "1/2", "--start", "3"}).json();
  io::Json coords = j["average"]["coords"];
  REQUIRE(coords.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(coords[i][0] == 3 + static_cast<int>(i));
    CHECK(coords[i][1] == "1/3");
  }
}

TEST_CASE("bundles and stored artifacts") {
  std::string path = scratch("bundle.json");
  REQUIRE(run({"--out", path, "bundle", "--chain", "1", "--height", "1", "--start", "1"}).code == 0);
  Run ok = run({"verify", "--bundle", path, "--chain", "1"});
  CHECK(ok.code == 0);

  io::Json doc = io::load_file(path);
  io::Json tight = doc;
  tight["bundle"]["nodes"][0]["epsilon"] = "1/100";
  std::string bad = scratch("bundle-corrupt.json");
  io::save_file(bad, tight);
  CHECK(run({"verify", "--bundle", bad, "--chain", "1"}).code == 1);
  doc["bundle"]["vector"]["coords"][0][1] = "1/2";
  std::string broken = scratch("bundle-broken.json");
  io::save_file(broken, doc);
  CHECK(run({"verify", "--bundle", broken, "--chain", "1"}).code == 2);
  CHECK(run({"verify", "--bundle", scratch("missing.json"), "--chain", "1"}).code == 2);
}

TEST_CASE("operators") {
  std::string path = scratch("operator.json");
  Run built = run({"--relaxed", "--out", path, "operator", "--chain", "1,1,6,32,248", "--r", "4,16,88,704",
                   "--heights", "2,2,2",
                   "--c", "1/4"});
  REQUIRE(built.code == 0);
  Run v = run({"verify", "--operator", path});
  CHECK(v.code == 0);
  io::Json op = io::load_file(path);
  io::Json x = op["operator"]["bundles"][0]["vector"];
  std::string xfile = scratch("x.json");
  io::save_file(xfile, x);
  Run applied = run({"apply", "--operator", path, "--vector", xfile});
  CHECK(applied.code == 0);
  CHECK(applied.json()["image"]["coords"] == io::parse(R"([[16, "1/1"]])"));
  Run probe = run({"probe", "--operator", path, "--kernel", "2", "--j0", "1"});
  CHECK(probe.code == 0);
}

TEST_CASE("suite selection") {
  Run r = run({"verify", "--suite", "lemma36"});
  CHECK(r.code == 0);
  io::Json suites = r.json()["suites"];
  REQUIRE(suites.size() == 1);
  CHECK(suites[0]["suite"] == "lemma36");
  CHECK(suites[0]["verdict"] == "pass");
  CHECK(run({"verify", "--suite", "nope"}).code == 2);
}

TEST_CASE("input errors") {
  CHECK(run({"norm", "--coords", "2:x"}).code == 2);
  CHECK(run({"norm", "--coords", "0:1"}).code == 2);
  CHECK(run({"scc", "--eps", "0"}).code == 2);
  CHECK(run({"family"}).code == 2);
  CHECK(run({"--format", "xml", "norm"}).code == 2);
  CHECK(run({}).code == 2);
  std::ostringstream sink;
  CHECK(cli::run({}, sink, sink) == 2);
}

TEST_CASE("outputs are reproducible") {
  std::vector<std::string> args{"bundle", "--chain", "1,1", "--height", "2"};
  CHECK(run(args).out == run(args).out);
  std::vector<std::string> fam{"--format", "csv", "family", "--set", "3,4,5", "--rank", "1"};
  CHECK(run(fam).out == run(fam).out);
}
