// Copyright 2026 The PPAM Authors
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

// End-to-end tests of the command-line driver. The binary path arrives via
// the PPAM_CLI environment variable; every test works inside its own
// temporary directory.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const char* bin = std::getenv("PPAM_CLI");
    ASSERT_NE(bin, nullptr) << "PPAM_CLI must point at the CLI binary";
    bin_ = bin;
    char tmpl[] = "/tmp/ppam_cli_XXXXXX";
    ASSERT_NE(mkdtemp(tmpl), nullptr);
    dir_ = tmpl;
  }

  void TearDown() override {
    if (!dir_.empty()) fs::remove_all(dir_);
  }

  std::string path(const std::string& name) const { return dir_ + "/" + name; }

  void write_file(const std::string& name, const std::string& content) const {
    std::ofstream out(path(name), std::ios::binary);
    out << content;
    ASSERT_TRUE(out.good());
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  RunResult run(const std::string& args) const {
    const std::string out_path = dir_ + "/.stdout";
    const std::string err_path = dir_ + "/.stderr";
    const std::string cmd = bin_ + " " + args + " > " + out_path + " 2> " + err_path;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
  }

  std::string bin_;
  std::string dir_;
};

constexpr char kFixture[] =
    "# n=5\n"
    "0 1 3\n"
    "0 2 4\n"
    "0 3\n"
    "1 4\n"
    "0 2 3\n"
    "0 1 3 4\n"
    "1 3 4\n"
    "1 3\n";

TEST_F(CliTest, FixtureMiningMatchesKnownList) {
  write_file("db.txt", kFixture);
  RunResult r = run("mine --in " + path("db.txt") + " --s-min 0.375");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out,
            "5/8 0\n"
            "5/8 1\n"
            "6/8 3\n"
            "4/8 4\n"
            "4/8 0 3\n"
            "4/8 1 3\n"
            "3/8 1 4\n");
}

TEST_F(CliTest, StatsReportsTheFixtureShape) {
  write_file("db.txt", kFixture);
  RunResult r = run("stats --in " + path("db.txt"));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("n_items=5\n"), std::string::npos);
  EXPECT_NE(r.out.find("transactions=8\n"), std::string::npos);
  EXPECT_NE(r.out.find("avg_len=2.750000\n"), std::string::npos);
}

TEST_F(CliTest, UnitBudgetDoublesTheFixture) {
  write_file("db.txt", kFixture);
  RunResult r = run("anonymize --scheme fs --in " + path("db.txt") + " --out " +
                    path("out.txt") + " --w 1 --seed 7");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("rows_out=16\n"), std::string::npos);
  std::istringstream published(slurp(path("out.txt")));
  std::string line;
  int data_rows = 0;
  while (std::getline(published, line)) {
    if (!line.empty() && line[0] != '#') ++data_rows;
  }
  EXPECT_EQ(data_rows, 16);
}

TEST_F(CliTest, SynthStatsAnonymizeMineRoundTrip) {
  RunResult synth = run("synth --n 30 --transactions 400 --avg-len 3 --weighting zipf "
                        "--seed 11 --out " + path("syn.txt"));
  ASSERT_EQ(synth.exit_code, 0) << synth.err;

  RunResult stats = run("stats --in " + path("syn.txt") + " --format csv");
  ASSERT_EQ(stats.exit_code, 0);
  EXPECT_NE(stats.out.find("n_items,transactions"), std::string::npos);

  RunResult anon = run("anonymize --scheme fs --in " + path("syn.txt") + " --out " +
                       path("pub.txt") + " --provenance " + path("pub.prov") +
                       " --w 2 --seed 12");
  ASSERT_EQ(anon.exit_code, 0) << anon.err;
  EXPECT_TRUE(fs::exists(path("pub.prov")));

  RunResult mine = run("mine --in " + path("pub.txt") +
                       " --scheme fs --w 2 --l 3 --s-min 0.1");
  ASSERT_EQ(mine.exit_code, 0) << mine.err;
  EXPECT_NE(mine.out.find("est="), std::string::npos);

  RunResult attack = run("attack --mode random --in " + path("pub.txt") +
                         " --provenance " + path("pub.prov") +
                         " --trials 50 --seed 1");
  ASSERT_EQ(attack.exit_code, 0) << attack.err;
  EXPECT_NE(attack.out.find("mean_success="), std::string::npos);
}

TEST_F(CliTest, IdenticalConfigurationGivesIdenticalBytes) {
  RunResult a = run("synth --n 25 --transactions 200 --avg-len 2.5 --weighting zipf "
                    "--seed 99 --out " + path("a.txt"));
  RunResult b = run("synth --n 25 --transactions 200 --avg-len 2.5 --weighting zipf "
                    "--seed 99 --out " + path("b.txt"));
  ASSERT_EQ(a.exit_code, 0);
  ASSERT_EQ(b.exit_code, 0);
  EXPECT_EQ(slurp(path("a.txt")), slurp(path("b.txt")));
  EXPECT_EQ(a.out, b.out);

  RunResult c = run("anonymize --scheme hs --in " + path("a.txt") + " --out " +
                    path("c.txt") + " --w 2 --p 0.9 --seed 5");
  RunResult d = run("anonymize --scheme hs --in " + path("a.txt") + " --out " +
                    path("d.txt") + " --w 2 --p 0.9 --seed 5");
  ASSERT_EQ(c.exit_code, 0) << c.err;
  ASSERT_EQ(d.exit_code, 0);
  EXPECT_EQ(slurp(path("c.txt")), slurp(path("d.txt")));
}

TEST_F(CliTest, DifferentSeedChangesTheOutput) {
  RunResult a = run("synth --n 25 --transactions 200 --avg-len 2.5 --seed 1 --out " +
                    path("a.txt"));
  RunResult b = run("synth --n 25 --transactions 200 --avg-len 2.5 --seed 2 --out " +
                    path("b.txt"));
  ASSERT_EQ(a.exit_code, 0);
  ASSERT_EQ(b.exit_code, 0);
  EXPECT_NE(slurp(path("a.txt")), slurp(path("b.txt")));
}

TEST_F(CliTest, RandomizedCommandsRequireASeed) {
  write_file("db.txt", kFixture);
  EXPECT_EQ(run("synth --n 10 --transactions 5 --avg-len 2 --out " + path("x.txt"))
                .exit_code,
            2);
  EXPECT_EQ(run("anonymize --scheme fs --in " + path("db.txt") + " --out " +
                path("x.txt") + " --w 1")
                .exit_code,
            2);
  EXPECT_EQ(run("attack --mode random --in " + path("db.txt") + " --provenance " +
                path("db.txt"))
                .exit_code,
            2);
  EXPECT_FALSE(fs::exists(path("x.txt")));
}

TEST_F(CliTest, ConfigErrorsExitTwo) {
  write_file("db.txt", kFixture);
  EXPECT_EQ(run("mine --in " + path("db.txt") + " --s-min 0.3 --scheme fs").exit_code, 2);
  EXPECT_EQ(run("anonymize --scheme nope --in " + path("db.txt") + " --out " +
                path("x.txt") + " --seed 1")
                .exit_code,
            2);
  EXPECT_EQ(run("privacy").exit_code, 2);
  // Fake length incompatible with a five-item universe.
  EXPECT_EQ(run("anonymize --scheme fs --in " + path("db.txt") + " --out " +
                path("x.txt") + " --w 1 --l 10 --seed 1")
                .exit_code,
            2);
  EXPECT_FALSE(fs::exists(path("x.txt")));
  EXPECT_FALSE(fs::exists(path("x.txt.tmp")));
}

TEST_F(CliTest, DataErrorsExitThree) {
  write_file("bad.txt", "0 1\n2 junk\n");
  RunResult r = run("stats --in " + path("bad.txt"));
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_NE(r.err.find("error: data:"), std::string::npos);
  EXPECT_EQ(run("stats --in " + path("missing.txt")).exit_code, 3);
}

TEST_F(CliTest, ErrorsAreSingleLines) {
  RunResult r = run("stats --in " + path("missing.txt"));
  ASSERT_FALSE(r.err.empty());
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
  EXPECT_EQ(r.err.rfind("error: ", 0), 0u);
}

TEST_F(CliTest, PrivacyGridPipelinePasses) {
  RunResult r = run("table1");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("grid_check=pass"), std::string::npos);
  RunResult same = run("privacy --table1 --limit");
  ASSERT_EQ(same.exit_code, 0);
  EXPECT_EQ(r.out, same.out);
}

TEST_F(CliTest, PrivacyReportsWorstAndAverage) {
  RunResult r = run("privacy --w 3 --n 1000 --gammas 0.2,0.5");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("worst_case=0.750000\n"), std::string::npos);
  EXPECT_NE(r.out.find("average_case="), std::string::npos);
  EXPECT_NE(r.out.find("gamma=0.500000"), std::string::npos);
}

TEST_F(CliTest, EvaluateEmitsErrorTableForEachThreshold) {
  RunResult synth = run("synth --n 30 --transactions 500 --avg-len 3 --weighting zipf "
                        "--seed 3 --out " + path("syn.txt"));
  ASSERT_EQ(synth.exit_code, 0);
  RunResult r = run("evaluate --in " + path("syn.txt") +
                    " --scheme fs --w 2 --s-min-list 0.05,0.02 --seed 4");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("privacy=0.666667\n"), std::string::npos);
  EXPECT_NE(r.out.find("s_min=0.050000 "), std::string::npos);
  EXPECT_NE(r.out.find("s_min=0.020000 "), std::string::npos);
  EXPECT_NE(r.out.find("transaction_ratio="), std::string::npos);
  EXPECT_NE(r.out.find("sp_0.0500,sm_0.0500,sp_0.0200,sm_0.0200"), std::string::npos);
  // Byte-determinism: timings stay off unless asked for.
  RunResult again = run("evaluate --in " + path("syn.txt") +
                        " --scheme fs --w 2 --s-min-list 0.05,0.02 --seed 4");
  EXPECT_EQ(r.out, again.out);
}

TEST_F(CliTest, GuidedAttackReportsFilteringQuality) {
  RunResult synth = run("synth --n 60 --transactions 600 --avg-len 4 --weighting zipf "
                        "--seed 31 --out " + path("syn.txt"));
  ASSERT_EQ(synth.exit_code, 0);
  RunResult anon = run("anonymize --scheme fs --in " + path("syn.txt") + " --out " +
                       path("pub.txt") + " --provenance " + path("pub.prov") +
                       " --w 2 --seed 32");
  ASSERT_EQ(anon.exit_code, 0);
  RunResult r = run("attack --mode guided --in " + path("pub.txt") + " --prior " +
                    path("syn.txt") + " --provenance " + path("pub.prov") + " --out " +
                    path("filtered.txt"));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("gamma_achieved="), std::string::npos);
  EXPECT_NE(r.out.find("real_loss="), std::string::npos);
  EXPECT_NE(r.out.find("residual_privacy="), std::string::npos);
  EXPECT_TRUE(fs::exists(path("filtered.txt")));
}

}  // namespace
