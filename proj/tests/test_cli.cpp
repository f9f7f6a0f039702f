#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "support.hpp"

namespace {

struct CliRun {
  int code = -1;
  std::string out;

  std::string result() const {
    const auto pos = out.rfind("RESULT ");
    return pos == std::string::npos ? "" : out.substr(pos, out.find('\n', pos) - pos);
  }
};

CliRun cli(const std::string& args) {
  CliRun r;
  const std::string cmd = std::string(DEHN_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, PredictOracleCompareOnBraidPair) {
  EXPECT_EQ(cli("predict goldens/braid.sp -n 1").result(), "RESULT I=0 m=2 ks=[2]");
  const CliRun two = cli("oracle goldens/braid.sp -n 2");
  EXPECT_EQ(two.code, 0);
  EXPECT_NE(two.result().find("I=4"), std::string::npos) << two.out;
  EXPECT_EQ(cli("compare goldens/braid.sp -n 2").code, 0);
}

TEST(Cli, ValidateAndClassify) {
  const CliRun v = cli("validate goldens/twist-torus.sp");
  EXPECT_EQ(v.code, 0) << v.out;
  const CliRun c = cli("classify goldens/twist-torus.sp");
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("orientable genus=1"), std::string::npos) << c.out;
}

TEST(Cli, GammaReportsComponentSizes) {
  const CliRun g = cli("gamma goldens/braid-annuli.sp");
  EXPECT_EQ(g.code, 0);
  EXPECT_NE(g.result().find("ks=[1,1]"), std::string::npos) << g.out;
}

TEST(Cli, KleinQueries) {
  EXPECT_EQ(cli("klein punct center").result(), "RESULT generators=[(0,0,1)]");
  EXPECT_EQ(cli("klein hole center").result(), "RESULT generators=[(0,2)]");
  EXPECT_EQ(cli("klein facts").code, 0);
  EXPECT_NE(cli("klein punct mult '(1,1,0)' '(1,0,0)'").result().find("(0,1,0)"), std::string::npos);
}

TEST(Cli, EnumerateCountsAndChecks) {
  EXPECT_EQ(cli("enumerate -m 1").result(), "RESULT m=1 instances=8");
  const CliRun check = cli("enumerate -m 2 --check");
  EXPECT_EQ(check.code, 0) << check.out;
  EXPECT_NE(check.result().find("violations=0"), std::string::npos) << check.out;
}

TEST(Cli, ZeroExponentIsANoOp) {
  const CliRun r = cli("predict goldens/braid.sp -n 0");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.result().find("I=0"), std::string::npos) << r.out;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("--help").code, 0);
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("predict goldens/braid.sp").code, 2);
  EXPECT_EQ(cli("enumerate -m 9").code, 2);
  EXPECT_EQ(cli("klein punct mult '(1,5,0)' '(0,0,0)'").code, 2);
  EXPECT_EQ(cli("validate goldens/missing.sp").code, 1);
}

TEST(Cli, MalformedFileExitsOneWithLineNumber) {
  const std::string path = ::testing::TempDir() + "bad.sp";
  {
    std::ofstream out(path);
    out << "surface-pair v1\ncrossings x\n";
  }
  const CliRun r = cli("validate " + path);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("2"), std::string::npos) << r.out;
}
