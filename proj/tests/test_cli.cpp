#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qlab/cli.hpp"

using namespace qlab;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, PodCoefficientsAsJson) {
  auto r = run_cli({"coeffs", "--series", "pod", "--order", "10", "--format", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 11u);
  EXPECT_EQ(j[6], "7");
}

TEST(Cli, PodConstantTerm) {
  auto r = run_cli({"coeffs", "--series", "pod", "--order", "0"});
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "0 0\n");
}

TEST(Cli, VerifyNamedIdentity) {
  auto r = run_cli({"verify", "--identity", "cor1.12", "--order", "150"});
  EXPECT_EQ(r.code, kOk) << r.out;
  EXPECT_NE(r.out.find("PASS phi-f-theta order=150"), std::string::npos);
}

TEST(Cli, VerifyAllReportsEveryCase) {
  auto r = run_cli({"verify", "--all", "--order", "30", "--format", "json"});
  EXPECT_EQ(r.code, kOk);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_GT(j.size(), 60u);
  for (const auto& e : j) EXPECT_EQ(e["status"], "pass") << e["id"];
}

TEST(Cli, RationalAndBivariateEncoding) {
  auto r = run_cli({"coeffs", "--series", "Vod_2var", "--order", "2", "--format", "json"});
  ASSERT_EQ(r.code, kOk);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j[2]["-2"], "1");
  EXPECT_EQ(j[2]["0"], "2");
  auto s = run_cli({"coeffs", "--series", "Vod_2var", "--order", "3", "--zeta", "1"});
  EXPECT_EQ(s.out, "0 1\n1 3\n2 6\n3 10\n");
}

TEST(Cli, NegativeValuationUsesObjectForm) {
  // (1+ζ)ν at ζ = q^{-2}: the n=1 term is −q^{-1}/2.
  auto r = run_cli(
      {"coeffs", "--series", "nu_2var", "--order", "3", "--zeta", "q^-2", "--format", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.is_object());
  EXPECT_EQ(j["valuation"], -1);
  EXPECT_EQ(j["order"], 3);
  EXPECT_EQ(j["coeffs"].size(), 5u);
  EXPECT_EQ(j["coeffs"][0], "-1/2");
}

TEST(Cli, EnumerationOutput) {
  auto r = run_cli({"enum", "--family", "pod1", "--n", "9"});
  ASSERT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("count=4"), std::string::npos);
  EXPECT_NE(r.out.find("  7~+2\n"), std::string::npos);
  auto c = run_cli({"enum", "--family", "pev", "--n-range", "5..6", "--format", "csv"});
  EXPECT_NE(c.out.find("pev,6,2,4\n"), std::string::npos);
}

TEST(Cli, AsymptoticTable) {
  auto r = run_cli({"asympt", "--family", "pev", "--n-range", "1..3", "--precision", "6"});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  EXPECT_EQ(header, "n,b(n),main_term,ratio");
  std::getline(in, row);
  EXPECT_EQ(row.rfind("1,1,", 0), 0u);
  EXPECT_EQ(run_cli({"asympt", "--family", "pev", "--n", "0"}).code, kUsage);
}

TEST(Cli, UsageErrors) {
  const std::vector<std::vector<std::string>> bad = {
      {},
      {"frobnicate"},
      {"coeffs", "--series", "no_such", "--order", "5"},
      {"coeffs", "--series", "pod"},
      {"coeffs", "--series", "pod", "--order", "-1"},
      {"coeffs", "--series", "pod", "--order", "4", "--zeta", "q"},
      {"coeffs", "--series", "Pod_2var", "--order", "4", "--zeta", "2i"},
      {"coeffs", "--series", "R", "--order", "4", "--zeta", "q^-1"},
      {"coeffs", "--series", "pod", "--order", "4", "--format", "xml"},
      {"enum", "--family", "nope", "--n", "3"},
      {"enum", "--family", "pod", "--n-range", "7..3"},
      {"verify", "--identity", "not-real"},
      {"verify"},
      {"asympt", "--family", "P", "--n", "10"},
  };
  for (const auto& args : bad) {
    auto r = run_cli(args);
    EXPECT_EQ(r.code, kUsage) << (args.empty() ? "<none>" : args[0]);
    EXPECT_NE(r.err.find("usage: qlab"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
  }
}

TEST(Cli, OrderCapFromEnvironment) {
  ::setenv("QLAB_ORDER_CAP", "20", 1);
  EXPECT_EQ(run_cli({"coeffs", "--series", "P", "--order", "21"}).code, kUsage);
  EXPECT_EQ(run_cli({"coeffs", "--series", "P", "--order", "20"}).code, kOk);
  ::unsetenv("QLAB_ORDER_CAP");
  EXPECT_EQ(run_cli({"coeffs", "--series", "P", "--order", "21"}).code, kOk);
}

TEST(Cli, DeterministicOutputAndOutFile) {
  std::vector<std::string> args = {"list", "--format", "json"};
  auto a = run_cli(args), b = run_cli(args);
  EXPECT_EQ(a.out, b.out);
  auto path = std::filesystem::temp_directory_path() / "qlab_cli_test.csv";
  auto r = run_cli({"coeffs", "--series", "Pev", "--order", "6", "--format", "csv", "--out",
                    path.string()});
  ASSERT_EQ(r.code, kOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream content;
  content << f.rdbuf();
  EXPECT_EQ(content.str(), "n,coefficient\n0,0\n1,1\n2,1\n3,3\n4,4\n5,6\n6,8\n");
  std::filesystem::remove(path);
}
