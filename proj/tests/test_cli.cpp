#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>

#include "chevalley/serialize.hpp"

using chevalley::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr discarded.
CliRun run(const std::string& args) {
  std::string cmd = std::string(CHEVALLEY_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, CompanionMatrixRankThree) {
  CliRun r = run("companion --group gl --rank 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("f = x^3 + a1*x^2 + a2*x + a3"), std::string::npos) << r.out;
  json j = json::parse(run("companion --group gl --rank 3 --json").out);
  json want = json::array({json::array({"0", "0", "-a3"}), json::array({"1", "0", "-a2"}), json::array({"0", "1", "-a1"})});
  EXPECT_EQ(j["companion"], want);
}

TEST(Cli, SlCompanionIsTraceFree) {
  json j = json::parse(run("companion --group sl --rank 3 --json").out);
  EXPECT_EQ(j["companion"][2][2], "0");
}

TEST(Cli, JsonIsByteIdentical) {
  for (const char* args : {"verify --group sp --rank 2 --json", "lattice-enum --group gl --rank 2 --a 0,-w^2 --box 1 --json",
                           "g2-solve --json", "verify --seed 11 --samples 10 --json"}) {
    CliRun a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_FALSE(a.out.empty()) << args;
  }
}

TEST(Cli, VerifySpRankTwoJson) {
  CliRun r = run("verify --group sp --rank 2 --json");
  EXPECT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["anti_self_adjoint"], true);
  EXPECT_EQ(j["det_gram_unit"], true);
  EXPECT_EQ(j["details"]["special_form_equivalence"], "unit -1");
  EXPECT_EQ(j["pass"], true);
}

TEST(Cli, VerifyG2ReportsNuIdentity) {
  CliRun r = run("verify --group g2");
  EXPECT_NE(r.out.find("nu = -144*omega: PASS"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("gluing (omega_A', xz omega_A'') = rho: PASS"), std::string::npos);
  // The printed contraction by 1 does not match the computed one.
  EXPECT_NE(r.out.find("iota_1 rho = e3^e6 + e4^e5 - (3e/2) e5^e6: FAIL"), std::string::npos);
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, VerifyFailureNamesIdentity) {
  std::string cmd = std::string(CHEVALLEY_CLI_PATH) + " verify --group so-even --rank 2 2>&1 >/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::array<char, 1024> buf{};
  std::string err;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) err.append(buf.data(), n);
  int status = pclose(pipe);
  EXPECT_EQ(WEXITSTATUS(status), 1);
  EXPECT_NE(err.find("different element = printed expansion"), std::string::npos) << err;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("companion --group sp --rank 2").code, 2);
  EXPECT_EQ(run("companion --group gl").code, 2);
  EXPECT_EQ(run("gram --group sp --rank 2 --char 2").code, 2);
  EXPECT_EQ(run("g2-solve --char 7").code, 2);
  EXPECT_EQ(run("verify").code, 2);
  EXPECT_EQ(run("lattice-enum --group gl --rank 2 --a 0,0 --box 1").code, 2);
  EXPECT_EQ(run("companion --help").code, 0);
}

TEST(Cli, LatticeCountsMatchGoldenFile) {
  std::ifstream in(std::string(CHEVALLEY_TEST_DATA) + "/lattice_gl2_counts.json");
  json golden = json::parse(in);
  for (const auto& entry : golden["boxes"]) {
    int box = entry["box"].get<int>();
    CliRun r = run("lattice-enum --group gl --rank 2 --a 0,-w^2 --field 5 --json --box " + std::to_string(box));
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["counts_by_degree"], entry["counts_by_degree"]) << box;
  }
}

TEST(Cli, SpecialFormsAndGluing) {
  json sp = json::parse(run("special-form --group sp --rank 2 --json").out);
  EXPECT_EQ(sp["unit"], "-1");
  CliRun glue = run("g2-glue --json");
  EXPECT_EQ(glue.code, 0);
  json g = json::parse(glue.out);
  EXPECT_EQ(g["glued_equals_rho"], true);
  EXPECT_EQ(g["untwisted_pair_rejected"], true);
  CliRun special = run("special-form --group g2");
  EXPECT_NE(special.out.find("z ^ zx ^ zx^2 = -q"), std::string::npos) << special.out;
}

TEST(Cli, G2SolveWithPin) {
  json j = json::parse(run("g2-solve --json").out);
  EXPECT_EQ(j["solve"]["family_dim"], 1);
  CliRun neg = run("g2-solve --pin c63=-1,c65=-5e/2 --json");
  EXPECT_EQ(neg.code, 0);
  EXPECT_EQ(run("g2-solve --pin c63=2").code, 2);
}

TEST(Cli, VerifyAllCoversEveryGroup) {
  CliRun r = run("verify --all --json");
  EXPECT_EQ(r.code, 1);
  json j = json::parse(r.out);
  std::map<std::string, int> groups;
  for (const auto& rep : j["reports"]) groups[rep["group"].get<std::string>()]++;
  std::map<std::string, int> want{{"gl", 5}, {"sl", 5}, {"sp", 3}, {"so-odd", 3}, {"so-even", 2}, {"g2", 1}, {"properties", 1}};
  EXPECT_EQ(groups, want);
  EXPECT_EQ(r.out.find("seconds"), std::string::npos);
}
