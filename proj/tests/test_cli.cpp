// Copyright 2026 The statlen Authors
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

#include <catch2/catch_amalgamated.hpp>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "statlen/cli.hpp"

namespace fs = std::filesystem;
using statlen::cli::run;

namespace {

struct Invocation {
  int exit_code;
  std::string out;
  std::string err;
};

Invocation invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  explicit TempDir(const std::string& name)
      : path_(fs::temp_directory_path() / ("statlen_test_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path file(const std::string& name, const std::string& content) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << content;
    return p;
  }
  fs::path dir(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

const char kBornFunctional[] = R"({"K": 2, "gamma": {"1": 1.0}})";
const char kMixedFunctional[] = R"({"K": 2, "gamma": {"1": 1.0, "0": 1.0}})";
const char kQubitRep[] =
    R"({"basis": "A", "entries": [{"label": "up", "re": 1, "im": 0},
                                  {"label": "down", "re": 0, "im": 2}]})";
const char kFastConfig[] =
    R"({"sample_count": 64, "dims": [2, 3], "unitaries_per_dim": 5,
        "restarts": 6, "descent_steps": 250, "sample_vectors": 24})";

}  // namespace

TEST_CASE("verify-axioms passes the squared modulus", "[cli]") {
  TempDir tmp("verify_pass");
  const auto functional = tmp.file("born.json", kBornFunctional);
  const auto config = tmp.file("cfg.json", kFastConfig);
  const auto r = invoke({"verify-axioms", functional.string(), "--config",
                         config.string()});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("profile match: yes") != std::string::npos);
}

TEST_CASE("verify-axioms honors an expected-failure profile", "[cli]") {
  TempDir tmp("verify_expect");
  const auto functional = tmp.file("mixed.json", kMixedFunctional);
  const auto expecting = tmp.file("cfg.json",
                                  R"({"sample_count": 64, "dims": [2],
                                      "unitaries_per_dim": 3,
                                      "expect": {"scalability": "fail",
                                                 "involution": "fail",
                                                 "device_independence": "fail"}})");
  CHECK(invoke({"verify-axioms", functional.string(), "--config",
                expecting.string()})
            .exit_code == 0);

  // The same functional against the default all-pass profile is a mismatch.
  const auto default_cfg = tmp.file("plain.json",
                                    R"({"sample_count": 64, "dims": [2],
                                        "unitaries_per_dim": 3})");
  CHECK(invoke({"verify-axioms", functional.string(), "--config",
                default_cfg.string()})
            .exit_code == 1);
}

TEST_CASE("malformed inputs exit 2 with a diagnostic", "[cli]") {
  TempDir tmp("verify_malformed");
  const auto truncated = tmp.file("broken.json", R"({"K": 2, "gamma": {"1")");
  const auto r = invoke({"verify-axioms", truncated.string()});
  CHECK(r.exit_code == 2);
  CHECK(!r.err.empty());

  CHECK(invoke({"verify-axioms", (tmp.dir("missing") / "no.json").string()})
            .exit_code == 2);
  CHECK(invoke({"bogus-command"}).exit_code == 2);
  CHECK(invoke({}).exit_code == 2);
}

TEST_CASE("sweep validates its range and dimension", "[cli]") {
  TempDir tmp("sweep_validate");
  CHECK(invoke({"sweep", "0", "1", "2"}).exit_code == 2);  // p = 0 rejected
  CHECK(invoke({"sweep", "2", "1", "2"}).exit_code == 2);
  CHECK(invoke({"sweep", "1", "7", "2"}).exit_code == 2);
  CHECK(invoke({"sweep", "1", "1", "9"}).exit_code == 2);
}

TEST_CASE("sweep finds exactly the admissible exponent", "[cli]") {
  TempDir tmp("sweep_run");
  const auto config = tmp.file("cfg.json", kFastConfig);
  const auto both = invoke({"sweep", "1", "2", "2", "--config", config.string(),
                            "--seed", "1", "--json"});
  CHECK(both.exit_code == 0);
  const auto report = statlen::json::parse(both.out);
  CHECK(report.at("admissible") == statlen::json::array({1}));
  CHECK(report.at("tag") == "eq:sum2");
  CHECK(report.at("results").at(0).at("tag") == "eq:abab");

  // A range that excludes 1 must come back empty and still exit 0.
  const auto none = invoke({"sweep", "2", "2", "2", "--config", config.string(),
                            "--seed", "1", "--json"});
  CHECK(none.exit_code == 0);
  CHECK(statlen::json::parse(none.out).at("admissible").empty());
}

TEST_CASE("cross-terms certifies the worked matrices", "[cli]") {
  TempDir tmp("cross");
  const auto hadamard = tmp.file("h.json",
                                 R"([[{"re":1,"im":0},{"re":1,"im":0}],
                                     [{"re":1,"im":0},{"re":-1,"im":0}]])");
  const auto r = invoke({"cross-terms", "2", hadamard.string(), "--json"});
  CHECK(r.exit_code == 0);
  const auto report = statlen::json::parse(r.out);
  CHECK(report.at("closed_form") == 8);
  CHECK(report.at("brute_force") == 8);
  CHECK(report.at("tag") == "eq:00");

  const auto diagonal = tmp.file("d.json",
                                 R"([[{"re":3,"im":0},{"re":0,"im":0}],
                                     [{"re":0,"im":0},{"re":5,"im":0}]])");
  const auto rd = invoke({"cross-terms", "2", diagonal.string(), "--json"});
  CHECK(rd.exit_code == 0);
  CHECK(statlen::json::parse(rd.out).at("vanishes") == true);

  CHECK(invoke({"cross-terms", "1", hadamard.string()}).exit_code == 2);
  const auto fractional = tmp.file("f.json",
                                   R"([[{"re":0.5,"im":0},{"re":1,"im":0}],
                                       [{"re":1,"im":0},{"re":1,"im":0}]])");
  CHECK(invoke({"cross-terms", "2", fractional.string()}).exit_code == 2);
}

TEST_CASE("simulate writes the artifact set", "[cli]") {
  TempDir tmp("simulate");
  const auto rep = tmp.file("rep.json", kQubitRep);
  const auto out_dir = tmp.dir("out");
  const auto r = invoke({"simulate", rep.string(), "200000", "--trials", "3",
                         "--seed", "5", "--out", out_dir.string(), "--json"});
  CHECK(r.exit_code == 0);
  for (const char* name :
       {"ensemble.csv", "ensemble.meta.json", "frequencies.json", "convergence.csv",
        "report.json"})
    CHECK(fs::exists(out_dir / name));

  const auto report = statlen::json::parse(r.out);
  CHECK(report.at("tag") == "eq:rule");
  CHECK(report.contains("disclaimer"));
  const auto estimated = report.at("estimated_frequencies").get<std::vector<double>>();
  CHECK(std::abs(estimated[0] - 0.2) <= 0.01);
  CHECK(std::abs(estimated[1] - 0.8) <= 0.01);

  // Certainty channel: every click lands in the first bin.
  const auto sure = tmp.file("sure.json",
                             R"({"basis": "A", "entries": [
                                 {"label": "a", "re": 1, "im": 0},
                                 {"label": "b", "re": 0, "im": 0}]})");
  const auto rs = invoke({"simulate", sure.string(), "1000", "--out",
                          tmp.dir("out2").string()});
  CHECK(rs.exit_code == 0);
  std::ifstream csv(tmp.dir("out2") / "ensemble.csv");
  std::string header, first;
  std::getline(csv, header);
  std::getline(csv, first);
  CHECK(first == "a,1000");

  CHECK(invoke({"simulate", (tmp.dir("nowhere") / "rep.json").string(), "10",
                "--out", out_dir.string()})
            .exit_code == 2);
  CHECK(invoke({"simulate", rep.string(), "10"}).exit_code == 2);  // --out required
}

TEST_CASE("reports cover the full derivation-step tag set", "[cli]") {
  TempDir tmp("tags");
  const auto functional = tmp.file("born.json", kBornFunctional);
  const auto config = tmp.file("cfg.json", kFastConfig);
  const auto rep = tmp.file("rep.json", kQubitRep);
  const auto hadamard = tmp.file("h.json",
                                 R"([[{"re":1,"im":0},{"re":1,"im":0}],
                                     [{"re":1,"im":0},{"re":-1,"im":0}]])");

  std::set<std::string> tags;
  auto harvest = [&tags](const statlen::json& node, auto&& self) -> void {
    if (node.is_object()) {
      if (node.contains("tag") && node.at("tag").is_string())
        tags.insert(node.at("tag").get<std::string>());
      for (const auto& [key, value] : node.items()) self(value, self);
    } else if (node.is_array()) {
      for (const auto& value : node) self(value, self);
    }
  };

  for (const auto& args : std::vector<std::vector<std::string>>{
           {"--json", "verify-axioms", functional.string(), "--config", config.string()},
           {"--json", "sweep", "1", "2", "2", "--config", config.string()},
           {"--json", "cross-terms", "2", hadamard.string()},
           {"--json", "simulate", rep.string(), "1000", "--out",
            tmp.dir("tag_out").string()}}) {
    const auto r = invoke(args);
    REQUIRE(r.exit_code == 0);
    harvest(statlen::json::parse(r.out), harvest);
  }

  for (const char* tag : {"eq:scale", "eq:ninv", "eq:add", "eq:star", "eq:abab",
                          "eq:sum2", "eq:00", "eq:rule"})
    CHECK(tags.count(tag) == 1);
}

TEST_CASE("identical manifests reproduce byte-identical reports", "[cli]") {
  TempDir tmp("repro");
  const auto functional = tmp.file("born.json", kBornFunctional);
  const auto config = tmp.file("cfg.json", kFastConfig);
  const std::vector<std::string> args = {"--frozen-time", "--json",    "--seed",
                                         "11",            "verify-axioms",
                                         functional.string(), "--config",
                                         config.string()};
  const auto first = invoke(args);
  const auto second = invoke(args);
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);

  const auto report = statlen::json::parse(first.out);
  CHECK(report.at("manifest").at("timestamp") == "1970-01-01T00:00:00Z");
  CHECK(report.at("manifest").at("seed") == 11);
}
