// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "support.hpp"
#include "symred/parallel.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = symred::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "symred_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

const std::string kPhaseH = "x1^2+x2^2+x3^2+y1^2+y2^2+y3^2";

// Commands whose --out documents must not depend on the thread count.
std::vector<std::vector<std::string>> document_commands() {
  return {
      {"reduce", "catalog:so3_cotangent_r6", "--mu", "0,0,1"},
      {"strata", "catalog:oscillator_r8", "--random", "300", "--seed", "4"},
      {"strata", "catalog:so3_cotangent_r6", "--point", "1,0,0,0,1,0"},
      {"sample", "catalog:so3_diag_r9_scaled", "--fix", "v4=0", "--chart", "v1,v2->v3", "--window", "-1:1,-1:1",
       "--grid", "12"},
      {"releq", "catalog:so3_cotangent_r6", "--ham", kPhaseH, "--mu", "0,0,1", "--seeds", "16"},
      {"verify", "catalog:kl_resonance?k=1,l=3"},
      {"export", "catalog:oscillator_r8"},
  };
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run({"list"}).code == 0);
  CHECK(run({}).code == symred::cli::kInputError);
  CHECK(run({"frobnicate"}).code == symred::cli::kInputError);
  CHECK(run({"verify", "catalog:so3_r3"}).code == symred::cli::kSuccess);
  CHECK(run({"verify", symred::testing::data_path("broken_model.json")}).code == symred::cli::kVerificationFailure);
  CHECK(run({"verify", "/nonexistent/model.json"}).code == symred::cli::kInputError);
  CHECK(run({"verify", "catalog:kl_resonance?k=2,l=2"}).code == symred::cli::kInputError);
  CHECK(run({"verify", "catalog:nope"}).code == symred::cli::kInputError);
  CHECK(run({"reduce", "catalog:so3_cotangent_r6", "--mu", "0,1"}).code == symred::cli::kInputError);
  CHECK(run({"releq", "catalog:so3_r3", "--ham", "x1^2", "--mu", "1"}).code == symred::cli::kInputError);
  CHECK(run({"releq", "catalog:so3_cotangent_r6", "--ham", kPhaseH, "--mu", "0,0,1", "--max-iterations", "1",
             "--seeds", "4"})
            .code == symred::cli::kNonConvergence);
  CHECK(run({"sample", "catalog:so3_cotangent_r6", "--chart", "a,a->b", "--window", "0:1,0:1"}).code ==
        symred::cli::kInputError);
}

TEST_CASE("list names every catalog key") {
  const Outcome o = run({"list"});
  for (const char* key : {"so3_r3", "so3_cotangent_r6", "so3_diag_r6", "so3_diag_r9", "so3_diag_r9_scaled",
                          "kl_resonance", "oscillator_r8"}) {
    CHECK(o.out.find(key) != std::string::npos);
  }
}

TEST_CASE("verify reports") {
  const Outcome diag = run({"verify", "catalog:so3_diag_r6"});
  CHECK(diag.code == 0);
  CHECK(diag.out.find("identically zero") != std::string::npos);
  CHECK(diag.out.find("verdict PASS") != std::string::npos);
  const Outcome broken = run({"verify", symred::testing::data_path("broken_model.json")});
  CHECK(broken.out.find("verdict FAIL") != std::string::npos);
}

TEST_CASE("reduce document") {
  const Outcome o = run({"reduce", "catalog:so3_cotangent_r6", "--mu", "0,0,1"});
  REQUIRE(o.code == 0);
  const auto doc = nlohmann::json::parse(o.out);
  CHECK(doc["provenance"]["tool"] == "symred");
  CHECK(doc["provenance"]["command"] == "reduce");
  const auto& rel = doc["reduction"]["reduced_space"]["set"]["relations"];
  REQUIRE(rel.size() == 2);
  CHECK(rel[1] == "d - 1");
  // Decimal levels are read exactly.
  const auto dec = nlohmann::json::parse(run({"reduce", "catalog:so3_cotangent_r6", "--mu", "0,0,0.5"}).out);
  CHECK(dec["reduction"]["reduced_space"]["set"]["relations"][1] == "d - 1/4");
}

TEST_CASE("sample reports the elliptope corners") {
  const Outcome o = run({"sample", "catalog:so3_diag_r9_scaled", "--fix", "v4=0", "--chart", "v1,v2->v3", "--window",
                         "-1:1,-1:1"});
  CHECK(o.code == 0);
  CHECK(o.out.find("singular 4") != std::string::npos);
}

TEST_CASE("documents are byte-identical across runs and thread counts") {
  const auto cmds = document_commands();
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    std::vector<std::string> reference;
    int variant = 0;
    for (int threads : {1, 2, 4}) {
      for (bool env : {false, true}) {
        const fs::path p = scratch("doc" + std::to_string(i) + "_" + std::to_string(variant++) + ".json");
        if (env) {
          setenv("SYMRED_THREADS", std::to_string(threads).c_str(), 1);
        } else {
          unsetenv("SYMRED_THREADS");
          symred::set_thread_count(threads);
        }
        auto args = cmds[i];
        args.push_back("--out");
        args.push_back(p.string());
        const Outcome o = run(args);
        CHECK_MESSAGE(o.code == 0, cmds[i][0], " ", o.err);
        reference.push_back(slurp(p));
      }
    }
    unsetenv("SYMRED_THREADS");
    REQUIRE_FALSE(reference[0].empty());
    for (const auto& r : reference) CHECK_MESSAGE(r == reference[0], cmds[i][0]);
    if (cmds[i][0] != "export") {
      const auto doc = nlohmann::json::parse(reference[0]);
      CHECK(doc.contains("provenance"));
      CHECK(doc["provenance"]["version"] == "0.1.0");
    }
  }
  symred::set_thread_count(1);
}
