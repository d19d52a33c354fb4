#include "chainext/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

using namespace chainext;
using namespace chainext::cli;

namespace {

std::string sample(const std::string& name) { return std::string(CHAINEXT_SAMPLES_DIR) + "/" + name; }

RunConfig config(const std::string& cmd, const std::string& input) {
  RunConfig c;
  c.command = cmd;
  c.input = input;
  return c;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CHAINEXT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string temp_file(const std::string& name, const std::string& text) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Cli, LieReportsH2) {
  EXPECT_EQ(cmd_lie(config("lie", sample("abelian2.lie"))).data["H2 dim"], 2);
  EXPECT_EQ(cmd_lie(config("lie", sample("sl2.lie"))).data["H2 dim"], 0);
  const Output o = cmd_lie(config("lie", sample("abelian3.lie")));
  EXPECT_EQ(o.data["[alpha1,alpha1]"], "(e1,e2,e3) = -2*e3");
  EXPECT_EQ(o.data["extension halts at order"], 2);
  EXPECT_TRUE(o.report.ok());
  EXPECT_NE(render_text(o).find("H2 dim: 9\n"), std::string::npos);
}

TEST(Cli, AlphaSelection) {
  RunConfig c = config("lie", sample("heisenberg.lie"));
  c.alpha1 = "h2:2";
  const Output o = cmd_lie(c);
  EXPECT_EQ(o.data["alpha1"], "[x,y] = y");
  c.alpha1 = "h2:9";
  EXPECT_THROW(cmd_lie(c), InputError);
  c.alpha1 = temp_file("alpha_bad.txt", "alpha1 1 2 1 1\nalpha1 2 3 2 1\n");
  c.command = "shlie";
  EXPECT_THROW(run(c), InputError);
}

TEST(Cli, ShLieL3Line) {
  const Output o = cmd_shlie(config("shlie", sample("abelian3.lie")));
  ASSERT_EQ(o.data["l3 on generators"].size(), 1u);
  EXPECT_EQ(o.data["l3 on generators"][0], "l3(e1,e2,e3) = 2 t^2 e3*");
  EXPECT_TRUE(o.report.ok());
}

TEST(Cli, OtherCommandsPass) {
  EXPECT_TRUE(cmd_brst(config("brst", sample("brst_so3.brst"))).report.ok());
  EXPECT_TRUE(cmd_bv(config("bv", sample("bv_two_pair.bv"))).report.ok());
  EXPECT_TRUE(cmd_extend(config("extend", sample("split_exact.cx"))).report.ok());
  RunConfig f = config("fuzz", "");
  f.count = 20;
  const Output o = cmd_fuzz(f);
  EXPECT_EQ(o.data["passed"], 20);
}

TEST(Cli, OutputIsDeterministic) {
  for (const auto& [cmd, file] : std::vector<std::pair<std::string, std::string>>{
           {"lie", "abelian3.lie"}, {"shlie", "so3.lie"}, {"brst", "brst_toy.brst"}, {"bv", "bv_ghost_ce.bv"}}) {
    RunConfig c = config(cmd, sample(file));
    EXPECT_EQ(render_text(run(c)), render_text(run(c))) << cmd;
    EXPECT_EQ(render_structured(run(c)), render_structured(run(c))) << cmd;
  }
  RunConfig f = config("fuzz", "");
  f.count = 5;
  f.seed = 9;
  EXPECT_EQ(render_text(run(f)), render_text(run(f)));
}

TEST(Cli, StructuredOutputParses) {
  const Output o = run(config("bv", sample("bv_two_pair.bv")));
  const Json j = Json::parse(render_structured(o));
  EXPECT_EQ(j["command"], "bv");
  EXPECT_TRUE(j["ok"].get<bool>());
  EXPECT_EQ(j["data"]["R2"], "0");
  EXPECT_GT(j["checks"].size(), 5u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("lie -i " + sample("so3.lie")), 0);
  EXPECT_EQ(run_cli("extend -i " + sample("split_exact.cx")), 0);
  EXPECT_EQ(run_cli("lie -i " + temp_file("bad.lie", "dim 2\nbracket 1 2 3 1\n")), 2);
  EXPECT_EQ(run_cli("lie -i " + temp_file("nojacobi.lie", "dim 3\nbracket 1 2 3 1\nbracket 2 3 1 1\nbracket 1 3 1 1\n")), 2);
  EXPECT_EQ(run_cli("lie"), 2);
  EXPECT_EQ(run_cli("lie -i /nonexistent/file"), 2);
  // well-formed input whose homotopy identity fails: exit 1
  const std::string broken = temp_file("broken.cx",
                                       "degrees 2 1\nf 1\nmatrix l1 1 2 1\n1\n0\nmatrix s 0 1 2\n1 0\n"
                                       "matrix eta 0 1 2\n0 1\nmatrix lambda 0 2 1\n0\n1\n");
  EXPECT_EQ(run_cli("extend -i " + broken), 1);
  EXPECT_EQ(run_cli("bv -i " + sample("bv_two_pair.bv") + " --trunc 1"), 2);
}
