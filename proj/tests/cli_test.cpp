#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run(const std::string& args) {
  const std::string cmd = std::string(STACKNASH_CLI) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("stacknash_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& body) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }

  fs::path dir_;
};

TEST_F(Cli, SolveDefaults) {
  const CliResult r = run("solve --params " + write("d.json", "{}"));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_LT(j["residual"].get<double>(), 1e-10);
  EXPECT_NEAR(j["theta1"].get<double>(), 2.724975723221106, 1e-10);
}

TEST_F(Cli, SolveNoEquilibrium) {
  const CliResult r = run("solve --params " + write("ne.json", R"({"lambda1": 1, "lambda2": 1})"));
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(nlohmann::json::parse(r.out)["error"], "no equilibrium: lambda1*lambda2 >= 1");
}

TEST_F(Cli, SolveInvalidInput) {
  EXPECT_EQ(run("solve --params " + write("bad.json", R"({"delta0": -1})")).code, 1);
  EXPECT_EQ(run("solve --params " + write("broken.json", "{oops")).code, 1);
  EXPECT_EQ(run("solve --params " + (dir_ / "missing.json").string()).code, 1);
  EXPECT_EQ(run("solve").code, 1);
}

TEST_F(Cli, SweepToStdoutAndFile) {
  const CliResult r = run("sweep --param delta0 --from 1 --to 10 --steps 50");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "param,theta1,theta2,p1,p2,f0_rate,f1_idx,f2_idx,dtheta1,dtheta2,dp1,dp2\r");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 50);

  const fs::path out = dir_ / "s.csv";
  ASSERT_EQ(run("sweep --param delta0 --from 1 --to 10 --steps 50 --out " + out.string()).code, 0);
  std::ifstream f(out, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), r.out);
}

TEST_F(Cli, SweepFlagsAndFailures) {
  const CliResult partial = run("sweep --param lambda1 --from 0.5 --to 2 --steps 4");
  EXPECT_EQ(partial.code, 0);
  EXPECT_NE(partial.out.find("no-equilibrium"), std::string::npos);
  EXPECT_NE(run("sweep --param lambda1 --from 1.5 --to 2 --steps 3").code, 0);
  EXPECT_EQ(run("sweep --param mu --from 1 --to 2 --steps 3").code, 1);
  EXPECT_EQ(run("sweep --param delta0 --from 3 --to 2 --steps 3").code, 1);
}

TEST_F(Cli, VerifyPassesAndIsDeterministic) {
  const std::string params = write("d.json", "{}");
  const CliResult a = run("verify --params " + params + " --seed 42 --paths 100000");
  const CliResult b = run("verify --params " + params + " --seed 42 --paths 100000");
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(nlohmann::json::parse(a.out)["passed"].get<bool>());
}

TEST_F(Cli, VerifyDetectsTampering) {
  const CliResult r = run("verify --params " + write("d.json", "{}") + " --seed 42 --paths 20000 --tamper-theta1 2.8");
  EXPECT_EQ(r.code, 3);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j["passed"].get<bool>());
}

TEST_F(Cli, FiguresWritesTwelveCsvs) {
  ASSERT_EQ(run("figures --out " + (dir_ / "figs").string()).code, 0);
  int count = 0;
  for (const auto& e : fs::directory_iterator(dir_ / "figs")) count += e.path().extension() == ".csv";
  EXPECT_EQ(count, 12);
  EXPECT_TRUE(fs::exists(dir_ / "figs" / "fig_theta_lambda2.csv"));
}

TEST_F(Cli, FiguresReportsIoFailure) {
  const std::string file = write("not_a_dir", "x");
  EXPECT_EQ(run("figures --out " + file + "/sub").code, 1);
}

}  // namespace
