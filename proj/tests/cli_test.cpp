// Copyright 2026 The Solo Authors
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
#include "solo/cli.hpp"

#include "corpus_util.hpp"
#include "gtest/gtest.h"

namespace solo {
namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::stringstream out, err;
  int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string corpus_path(const std::string& name) {
  return (std::filesystem::path(testutil::corpus_dir()) / name).string();
}
std::string inputs_path(const std::string& name) {
  return (std::filesystem::path(testutil::corpus_dir()) / "inputs" / name).string();
}

TEST(CliCheckTest, PrintsElaboratedTypeAndExitCodes) {
  CliResult ok = run_cli({"check", corpus_path("dbl.solo")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "sreal diff [db:2]\n");

  CliResult typerr = run_cli({"check", corpus_path("sum_no_clip.solo")});
  EXPECT_EQ(typerr.code, 1);
  EXPECT_NE(typerr.err.find("METRIC_MISMATCH"), std::string::npos);
  // Diagnostics carry file:line:col: CODE: message.
  EXPECT_NE(typerr.err.find(".solo:"), std::string::npos);
}

TEST(CliCheckTest, ParseErrorIsExitTwo) {
  auto tmp = std::filesystem::temp_directory_path() / "solo_cli_parse_error.solo";
  std::ofstream(tmp) << "main = if(x){y};\n";
  CliResult r = run_cli({"check", tmp.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("PARSE"), std::string::npos);
}

TEST(CliBudgetTest, TableRows) {
  CliResult r = run_cli({"budget", corpus_path("add_noise_twice.solo")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "o: eps = 5\n");

  // kmeans: 3 eps per source; mwem: 2k eps = 8; cdf: m eps = 5; gd: k eps = 10.
  EXPECT_EQ(run_cli({"budget", corpus_path("kmeans_iter.solo")}).out, "b: eps = 3\n");
  EXPECT_EQ(run_cli({"budget", corpus_path("mwem.solo")}).out, "db: eps = 8\n");
  EXPECT_EQ(run_cli({"budget", corpus_path("cdf.solo")}).out, "db: eps = 5\n");
  std::string gd = run_cli({"budget", corpus_path("gd.solo")}).out;
  EXPECT_EQ(gd, "xs: eps = 10\nys: eps = 10\n");

  CliResult notpm = run_cli({"budget", corpus_path("dbl.solo")});
  EXPECT_EQ(notpm.code, 1);
  EXPECT_NE(notpm.err.find("NOT_A_PRIVATE_PROGRAM"), std::string::npos);
}

TEST(CliRunTest, SeededRunsAreByteIdentical) {
  auto files = testutil::corpus_files();
  ASSERT_FALSE(files.empty());
  for (const auto& f : files) {
    std::string text = testutil::read_file(f);
    auto expect = testutil::expectation_of(text);
    if (!expect || expect->is_error) continue;
    std::string in = inputs_path(f.stem().string() + ".json");
    if (!std::filesystem::exists(in)) continue;
    std::vector<std::string> args = {"run", f.string(), "--inputs", in,
                                     "--seed", "7", "--trace"};
    CliResult a = run_cli(args);
    CliResult b = run_cli(args);
    EXPECT_EQ(a.code, 0) << f << "\n" << a.err;
    EXPECT_EQ(a.out, b.out) << f << " is not deterministic";
    EXPECT_FALSE(a.out.empty());
  }
}

TEST(CliRunTest, JsonFormatIsMachineParseable) {
  CliResult r = run_cli({"run", corpus_path("add_noise_twice.solo"), "--inputs",
                         inputs_path("add_noise_twice.json"), "--seed", "3", "--trace",
                         "--format", "json"});
  ASSERT_EQ(r.code, 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.contains("result"));
  EXPECT_EQ(j["trace"].size(), 2u);

  CliResult c = run_cli({"check", corpus_path("dbl.solo"), "--format", "json"});
  nlohmann::json cj = nlohmann::json::parse(c.out);
  EXPECT_EQ(cj["main_type"], "sreal diff [db:2]");

  CliResult v = run_cli({"verify", corpus_path("dbl.solo"), "--mode", "metric",
                         "--trials", "50", "--format", "json"});
  nlohmann::json vj = nlohmann::json::parse(v.out);
  EXPECT_TRUE(vj["pass"].get<bool>());
}

TEST(CliVerifyTest, DpPassAndFailExitCodes) {
  CliResult pass = run_cli({"verify", corpus_path("laplace1.solo"), "--mode", "dp"});
  EXPECT_EQ(pass.code, 0) << pass.err;
  EXPECT_NE(pass.out.find("PASS"), std::string::npos);

  CliResult fail = run_cli({"verify", corpus_path("miscalibrated.solo"), "--mode", "dp",
                            "--claim-eps", "1"});
  EXPECT_EQ(fail.code, 1);
  EXPECT_NE(fail.out.find("FAIL"), std::string::npos);

  CliResult honest = run_cli({"verify", corpus_path("miscalibrated.solo"), "--mode", "dp"});
  EXPECT_EQ(honest.code, 0) << honest.out;
}

TEST(CliVerifyTest, DpWithExplicitInputFiles) {
  auto dir = std::filesystem::temp_directory_path();
  auto in1 = dir / "solo_dp_in1.json";
  auto in2 = dir / "solo_dp_in2.json";
  std::ofstream(in1) << R"({"db": 0.0})";
  std::ofstream(in2) << R"({"db": 1.0})";
  CliResult r = run_cli({"verify", corpus_path("laplace1.solo"), "--mode", "dp",
                         "--inputs", in1.string(), "--inputs2", in2.string(), "--grid",
                         "-15:16:0.05"});
  EXPECT_EQ(r.code, 0) << r.err;
  CliResult missing = run_cli({"verify", corpus_path("laplace1.solo"), "--mode", "dp",
                               "--inputs", in1.string()});
  EXPECT_EQ(missing.code, 1);
}

TEST(CliExamplesTest, ListsCorpusWithExpectations) {
  CliResult r = run_cli({"examples", "--dir", testutil::corpus_dir()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("dbl.solo: expect-type: sreal diff [db:2]"), std::string::npos);
  EXPECT_NE(r.out.find("dangerous_map.solo: expect-error: ENV_ESCAPE"), std::string::npos);
}

TEST(CliMiscTest, HelpAndFuelExhaustion) {
  CliResult help = run_cli({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("check"), std::string::npos);

  CliResult fuel = run_cli({"run", corpus_path("dbl.solo"), "--inputs",
                            inputs_path("dbl.json"), "--fuel", "0"});
  EXPECT_EQ(fuel.code, 1);
  EXPECT_NE(fuel.err.find("OUT_OF_FUEL"), std::string::npos);
}

TEST(CliMiscTest, EveryDiagnosticCodeIsDocumented) {
  auto docs = std::filesystem::path(testutil::corpus_dir()).parent_path() / "docs" /
              "diagnostics.md";
  ASSERT_TRUE(std::filesystem::exists(docs));
  std::string text = testutil::read_file(docs);
  for (int c = 0; c <= static_cast<int>(Code::kInternal); ++c) {
    const char* name = code_name(static_cast<Code>(c));
    EXPECT_NE(text.find(std::string("`") + name + "`"), std::string::npos)
        << name << " is not documented in docs/diagnostics.md";
  }
}

// Corpus conformance through the CLI: each program checks or fails exactly
// as its header comment declares, with the right exit status.
TEST(CorpusConformanceTest, CliAgreesWithHeaders) {
  auto files = testutil::corpus_files();
  ASSERT_GE(files.size(), 12u);
  for (const auto& f : files) {
    auto expect = testutil::expectation_of(testutil::read_file(f));
    ASSERT_TRUE(expect.has_value()) << f;
    CliResult r = run_cli({"check", f.string()});
    if (expect->is_error) {
      EXPECT_EQ(r.code, 1) << f << ": " << r.err;
      EXPECT_NE(r.err.find(expect->value), std::string::npos)
          << f << " expected " << expect->value << ", got: " << r.err;
    } else {
      EXPECT_EQ(r.code, 0) << f << ": " << r.err;
      EXPECT_EQ(r.out, expect->value + "\n") << f;
    }
  }
}

}  // namespace
}  // namespace solo
