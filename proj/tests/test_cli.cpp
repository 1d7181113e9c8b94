// SPDX-License-Identifier: Apache-2.0
// Runs the command-line binary and checks output and exit codes.
#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" HYPERINV_CLI "' " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return "'" HYPERINV_DATA "/" + name + "'"; }

}  // namespace

TEST(Cli, GhzSecondHyperdeterminant) {
  const CliResult r = run("det222 " + data("ghz3.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(std::stod(r.out), 0.25, 1e-12);
  EXPECT_NEAR(std::stod(run("det222 " + data("w3.json")).out), 0.0, 1e-12);
}

TEST(Cli, BellFingerprintDeterminant) {
  const CliResult r = run("fingerprint --out csv " + data("bell.json"));
  ASSERT_EQ(r.code, 0);
  const auto pos = r.out.find("charpoly.F4@v1,");
  ASSERT_NE(pos, std::string::npos) << r.out;
  EXPECT_NEAR(std::stod(r.out.substr(pos + 15)), -1.0 / 256.0, 1e-15);
}

TEST(Cli, CompareGhzAndW) {
  const CliResult r = run("compare " + data("ghz3.json") + " " + data("w3.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "NECESSARILY_INEQUIVALENT");
  EXPECT_NE(r.out.find("differs det222@v1"), std::string::npos);
  EXPECT_EQ(run("compare " + data("ghz3.json") + " " + data("ghz3.json")).out, "CONSISTENT\n");
}

TEST(Cli, HdetAndCharpolyAgree) {
  const CliResult h = run("hdet " + data("mixed4q_rank2.json"));
  const CliResult c = run("charpoly --check " + data("mixed4q_rank2.json"));
  ASSERT_EQ(h.code, 0);
  ASSERT_EQ(c.code, 0);
  const auto pos = c.out.find("c0 ");
  ASSERT_NE(pos, std::string::npos);
  const double hv = std::stod(h.out);
  EXPECT_NEAR(std::stod(c.out.substr(pos + 3)), hv, 1e-12 * std::abs(hv));
  EXPECT_NE(c.out.find("interp.c4 "), std::string::npos);
}

TEST(Cli, ValidationErrorsExitTwo) {
  EXPECT_EQ(run("det222 " + data("bell.json")).code, 2);
  EXPECT_EQ(run("hdet /nonexistent/state.json").code, 2);
  EXPECT_EQ(run("sample --kind density --dims 2,2").code, 2);
  EXPECT_EQ(run("audit " + data("bell.json")).code, 2);
  EXPECT_EQ(run("sample --kind density --dims 2,0 --seed 1").code, 2);
}

TEST(Cli, BudgetErrorExitsThree) {
  EXPECT_EQ(run("hdet " + data("mixed4q_rank2.json"), "HYPERINV_BUDGET=10").code, 3);
  EXPECT_EQ(run("hdet " + data("bell.json"), "HYPERINV_BUDGET=1e9").code, 0);
}

TEST(Cli, SampleIsSeededAndReloadable) {
  const CliResult a = run("sample --kind density --dims 2,3 --rank 2 --seed 42");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, run("sample --kind density --dims 2,3 --rank 2 --seed 42").out);
  EXPECT_NE(a.out, run("sample --kind density --dims 2,3 --rank 2 --seed 43").out);
  const auto path = std::filesystem::temp_directory_path() / "hyperinv_cli_sample.json";
  ASSERT_EQ(run("sample --kind density --dims 2,3 --rank 2 --seed 42 --out '" + path.string() + "'").code, 0);
  EXPECT_EQ(run("fingerprint '" + path.string() + "'").code, 0);
  std::filesystem::remove(path);
}

TEST(Cli, AuditIsReproducible) {
  const std::string args = "audit --group slocc --trials 5 --seed 3 " + data("bell.json");
  const CliResult a = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, run(args).out);
  EXPECT_NE(a.out.find("INVARIANT"), std::string::npos);
  EXPECT_NE(a.out.find("seed 3"), std::string::npos);
}

TEST(Cli, GoldenFingerprintsMatch) {
  for (const char* name : {"bell", "ghz3", "w3", "mixed4q_rank2"}) {
    const CliResult r = run("fingerprint " + data(std::string(name) + ".json") + " --check " +
                      data(std::string("golden/") + name + ".fingerprint.json"));
    EXPECT_EQ(r.code, 0) << name;
  }
}

TEST(Cli, GoldenMismatchExitsOne) {
  EXPECT_EQ(run("fingerprint " + data("ghz3.json") + " --check " + data("golden/w3.fingerprint.json")).code, 1);
}
