#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace gwl::cli {
namespace {

struct Invocation {
  int code = -1;
  std::string out;
  std::string err;
};

Invocation gwl(std::vector<std::string> args) {
  args.insert(args.begin(), "gwl");
  std::ostringstream out, err;
  Invocation r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("gwl_cli_" + std::string(::testing::UnitTest::GetInstance()
                                         ->current_test_info()
                                         ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    graph_ = write("g.txt", "a b 2\nb c 1\na c 4\nc d 3\nd e 1\nb e 5\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
    return (dir_ / name).string();
  }
  std::string out(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  std::string graph_;
};

TEST_F(CliTest, IdenticalGraphsGiveIdentityMatching) {
  const std::string truth = write("truth.txt", "a a\nb b\nc c\nd d\ne e\n");
  const Invocation r = gwl({"match", graph_, graph_, "--truth", truth, "--out", out("o"),
                     "--outer", "5", "--inner", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("node_correctness=100\n"), std::string::npos);
  EXPECT_EQ(slurp(dir_ / "o/matching.csv"), "source,target\na,a\nb,b\nc,c\nd,d\ne,e\n");
  for (const char* f : {"coupling.csv", "solver_trace.csv", "outer_trace.csv",
                        "source_embeddings.csv", "target_embeddings.csv",
                        "embedding_matching.csv", "manifest.txt"}) {
    EXPECT_TRUE(fs::exists(dir_ / "o" / f)) << f;
  }
  EXPECT_FALSE(fs::exists(dir_ / "o/coupling_dense.csv"));
}

TEST_F(CliTest, MissingInputIsInputError) {
  const std::string missing = out("nope.txt");
  const Invocation r = gwl({"match", missing, graph_, "--out", out("o")});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find(missing), std::string::npos);
}

TEST_F(CliTest, BadFlagsAreInputErrors) {
  EXPECT_EQ(gwl({"match", graph_, graph_, "--bogus"}).code, kExitInput);
  EXPECT_EQ(gwl({"match", graph_, graph_, "--gamma", "abc", "--out", out("o")}).code,
            kExitInput);
  EXPECT_EQ(gwl({"match", graph_, graph_, "--loss", "l1", "--out", out("o")}).code,
            kExitInput);
  EXPECT_EQ(gwl({}).code, kExitInput);
  EXPECT_EQ(gwl({"--help"}).code, kExitOk);
  const std::string bad = write("bad.txt", "a b\n");
  const Invocation r = gwl({"match", bad, graph_, "--out", out("o")});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("line 1"), std::string::npos);
}

TEST_F(CliTest, ConfigFileSitsBetweenDefaultsAndFlags) {
  const std::string cfg = write("run.cfg", "# settings\ngamma = 0.5\nouter = 2\ninner=5\n");
  ASSERT_EQ(gwl({"match", graph_, graph_, "--config", cfg, "--out", out("a")}).code, 0);
  const std::string a = slurp(dir_ / "a/manifest.txt");
  EXPECT_NE(a.find("setting.gamma = 0.5\n"), std::string::npos);
  EXPECT_NE(a.find("setting.outer = 2\n"), std::string::npos);
  EXPECT_NE(a.find("setting.beta = 10\n"), std::string::npos);

  ASSERT_EQ(gwl({"match", graph_, graph_, "--config", cfg, "--gamma", "0.2", "--out",
                 out("b")})
                .code,
            0);
  EXPECT_NE(slurp(dir_ / "b/manifest.txt").find("setting.gamma = 0.2\n"), std::string::npos);

  const std::string unknown = write("bad.cfg", "gama = 1\n");
  EXPECT_EQ(gwl({"match", graph_, graph_, "--config", unknown, "--out", out("c")}).code,
            kExitInput);
}

TEST_F(CliTest, OutputDirectoryFromEnvironment) {
  ::setenv("GWL_OUT_DIR", out("env").c_str(), 1);
  const Invocation r = gwl({"match", graph_, graph_, "--outer", "1", "--inner", "5"});
  ::unsetenv("GWL_OUT_DIR");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "env/matching.csv"));
}

TEST_F(CliTest, RepeatedRunsAreByteIdentical) {
  for (const char* d : {"r1", "r2"}) {
    ASSERT_EQ(gwl({"match", graph_, graph_, "--seed", "7", "--threads", "1", "--dense",
                   "--outer", "4", "--inner", "20", "--out", out(d)})
                  .code,
              0);
  }
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir_ / "r1")) {
    EXPECT_EQ(slurp(e.path()), slurp(dir_ / "r2" / e.path().filename()))
        << e.path().filename();
    ++files;
  }
  EXPECT_EQ(files, 9u);
}

TEST_F(CliTest, NumericalFailureExitsThreeWithTrace) {
  const Invocation r = gwl({"match", graph_, graph_, "--gamma", "1e-300", "--out", out("o")});
  EXPECT_EQ(r.code, kExitNumerical) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "o/solver_trace.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "o/manifest.txt"));
}

TEST_F(CliTest, EmbedWritesEmbeddings) {
  const Invocation r = gwl({"embed", graph_, graph_, "--outer", "3", "--inner", "10", "--dim",
                     "4", "--out", out("o")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "o/source_embeddings.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "o/coupling.csv"));
  std::istringstream first(slurp(dir_ / "o/source_embeddings.csv"));
  std::string line;
  std::getline(first, line);
  EXPECT_EQ(std::count(line.begin(), line.end(), ','), 4);
  EXPECT_EQ(gwl({"embed", graph_, graph_, "--alpha-schedule", "zero", "--out", out("p")}).code,
            kExitInput);
}

TEST_F(CliTest, BenchmarkRowsAndSeedDeterminism) {
  const std::vector<std::string> args = {"benchmark", "--n",     "8",     "--q",
                                         "0,20",      "--trials", "2",    "--outer",
                                         "2",         "--inner", "5",     "--seed",
                                         "7",         "--threads", "2",   "--out"};
  auto with_out = [&](const std::string& d) {
    auto a = args;
    a.push_back(out(d));
    return a;
  };
  const Invocation r = gwl(with_out("b1"));
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_EQ(gwl(with_out("b2")).code, 0);
  const std::string csv = slurp(dir_ / "b1/benchmark.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 2 * 3 * 2);
  EXPECT_EQ(csv, slurp(dir_ / "b2/benchmark.csv"));
  EXPECT_EQ(slurp(dir_ / "b1/summary.csv"), slurp(dir_ / "b2/summary.csv"));
  EXPECT_NE(r.out.find("q=20 method=GWL-C nc_transport="), std::string::npos);
}

TEST_F(CliTest, RecommendPlantedPrintsMetrics) {
  const Invocation r = gwl({"recommend", "--planted", "20", "-L", "1", "--outer", "10",
                     "--inner", "50", "--dim", "16", "--out", out("o")});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* key : {"precision=", "recall=", "f1="}) {
    EXPECT_NE(r.out.find(key), std::string::npos) << key;
  }
  EXPECT_TRUE(fs::exists(dir_ / "o/users.txt"));
  EXPECT_TRUE(fs::exists(dir_ / "o/recommendations_transport.csv"));
}

TEST_F(CliTest, RecommendFromFilesWithHoldoutAndTruncation) {
  const std::string users = write("u.txt", "u1 u2 1\nu2 u3 2\nu3 u1 1\n");
  const std::string items = write("i.txt", "i1 i2 1\ni2 i3 2\ni3 i1 1\n");
  const std::string inter = write("x.txt", "u1 i1 1\nu2 i2 1\nu3 i3 1\nu1 i2 1\n");
  const std::string truth = write("t.txt", "u1 i1\nu2 i2\n");
  const Invocation r = gwl({"recommend", users, items, "--interactions", inter, "--truth", truth,
                     "-L", "10", "--outer", "2", "--inner", "5", "--dim", "4", "--quiet",
                     "--out", out("o")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("recall=1\n"), std::string::npos);
  const std::string lists = slurp(dir_ / "o/recommendations_transport.csv");
  EXPECT_EQ(std::count(lists.begin(), lists.end(), '\n'), 1 + 3 * 3);

  const Invocation h = gwl({"recommend", users, items, "--interactions", inter, "--holdout",
                     "0.5", "--seed", "3", "--outer", "2", "--inner", "5", "--dim", "4",
                     "--out", out("h")});
  ASSERT_EQ(h.code, 0) << h.err;
  EXPECT_NE(h.out.find("precision="), std::string::npos);
  EXPECT_EQ(gwl({"recommend", users, items, "--interactions", inter, "--holdout", "0.5",
                 "--truth", truth, "--out", out("x")})
                .code,
            kExitInput);
}

TEST_F(CliTest, SolverCompareRecordsInstabilityAsData) {
  const Invocation r = gwl({"solver-compare", "--synthetic", "12", "--gammas", "1,0.001",
                     "--sinkhorn-list", "1", "--inner", "30", "--out", out("o")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string summary = slurp(dir_ / "o/compare.csv");
  EXPECT_EQ(summary.substr(0, summary.find('\n')),
            "solver,gamma,J,steps,final_objective,unstable,log_domain");
  EXPECT_NE(summary.find("proximal,1,1,30,"), std::string::npos);
  EXPECT_NE(summary.find("proximal,0.001,1,0,"), std::string::npos);
  for (const auto& e : fs::directory_iterator(dir_ / "o/traces")) {
    const std::string t = slurp(e.path());
    EXPECT_LE(std::count(t.begin(), t.end(), '\n'), 31) << e.path();
  }
}

}  // namespace
}  // namespace gwl::cli
