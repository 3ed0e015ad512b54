#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli.hpp"

namespace {

using cesaro::cli::run;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "cesaro");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         ("cesaro_cli_test_" + name);
}

TEST(ParseAlpha, Tokens) {
  EXPECT_EQ(cesaro::cli::parse_alpha("1/2"), 0.5);
  EXPECT_EQ(cesaro::cli::parse_alpha("0"), 0.0);
  EXPECT_EQ(cesaro::cli::parse_alpha("1"), 1.0);
  EXPECT_EQ(cesaro::cli::parse_alpha("0.25"), 0.25);
  EXPECT_ANY_THROW(cesaro::cli::parse_alpha("0.25x"));
  EXPECT_ANY_THROW(cesaro::cli::parse_alpha(""));
  EXPECT_ANY_THROW(cesaro::cli::parse_alpha("nan"));
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"norm", "--n", "2"}).code, 2);
  EXPECT_EQ(invoke({"norm", "--n", "2", "--alpha", "1.5"}).code, 2);
  EXPECT_EQ(invoke({"norm", "--n", "2", "--alpha", "abc"}).code, 2);
  EXPECT_EQ(invoke({"norm", "--n", "-3", "--alpha", "0.5"}).code, 2);
  EXPECT_EQ(invoke({"coeffs", "--n", "3", "--alpha", "0.5", "--format", "xml"}).code,
            2);
  EXPECT_EQ(invoke({"constants", "--alpha", "0.5"}).code, 2);
  EXPECT_EQ(invoke({"dirichlet", "1,2,", "--zeta-arg", "0"}).code, 2);
  EXPECT_EQ(invoke({"verify", "--suite", "nonsense"}).code, 2);
  const auto big = invoke({"coeffs", "--n", "99999999", "--alpha", "0.5"});
  EXPECT_EQ(big.code, 2);
  EXPECT_NE(big.err.find("exceeds"), std::string::npos);
  EXPECT_TRUE(big.out.empty());
}

TEST(Cli, Help) {
  const auto h = invoke({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("sweep"), std::string::npos);
}

TEST(Cli, NormEndpoints) {
  const auto a = invoke({"norm", "--n", "2", "--alpha", "0"});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto ja = nlohmann::json::parse(a.out);
  EXPECT_NEAR(ja["norm_sq"].get<double>(), 3.0, 3e-9);
  for (const char* key : {"n", "alpha", "norm", "norm_sq", "iterations",
                          "residual", "coeff_lower_bound"})
    EXPECT_TRUE(ja.contains(key)) << key;

  const auto b = invoke({"norm", "--n", "2", "--alpha", "1"});
  ASSERT_EQ(b.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(b.out)["norm_sq"].get<double>(), 2.0 / 3.0,
              1e-9);
}

TEST(Cli, NormNonConvergenceExitsOne) {
  const auto r = invoke({"norm", "--n", "5000", "--alpha", "0.5", "--tol",
                         "1e-15", "--max-iter", "2"});
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_GT(j["norm"].get<double>(), 0.0);
}

TEST(Cli, CoeffsCsvAndJson) {
  const auto c = invoke({"coeffs", "--n", "2", "--alpha", "1/2"});
  ASSERT_EQ(c.code, 0);
  const auto l = lines(c.out);
  ASSERT_EQ(l.size(), 5u);
  EXPECT_EQ(l[0], "# schema=1");
  EXPECT_EQ(l[1], "k,c_k");
  EXPECT_EQ(l[2], "0,1");
  const auto comma = l[4].find(',');
  EXPECT_NEAR(std::stod(l[4].substr(comma + 1)), 8.0 / 15.0, 1e-15);

  const auto j = invoke({"coeffs", "--n", "2", "--alpha", "1", "--format", "json"});
  ASSERT_EQ(j.code, 0);
  const auto parsed = nlohmann::json::parse(j.out);
  EXPECT_EQ(parsed["coeffs"][1]["c_k"].get<double>(), 2.0 / 3.0);
}

TEST(Cli, BoundsGrid) {
  const auto r = invoke({"bounds", "--n", "10", "100", "--alpha", "0.5", "0.75"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 6u);
  EXPECT_EQ(l[1],
            "n,alpha,S,upper,best_lower,best_m,closed_upper,"
            "closed_lower_at_proof_m");
  EXPECT_EQ(invoke({"bounds", "--n", "0", "--alpha", "0.5"}).code, 2);
  EXPECT_EQ(invoke({"bounds", "--n", "5", "--alpha", "0.5", "--gamma", "1"}).code,
            2);
}

TEST(Cli, Dirichlet) {
  // z^3 - 3z + 2: D_1 = 6, and the Fejer quotient equals the norm 2/3.
  const auto r = invoke({"dirichlet", "2,-3,0,1", "--kernel", "2,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["seminorm"].get<double>(), 6.0, 1e-12);
  EXPECT_NEAR(j["rayleigh_quotient"].get<double>(), 2.0 / 3.0, 1e-12);

  const auto c = invoke({"dirichlet", "0,0:1,0,0:-2", "--zeta-arg", "1.3"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_GT(nlohmann::json::parse(c.out)["seminorm"].get<double>(), 0.0);
  EXPECT_EQ(invoke({"dirichlet", "5", "--kernel", "2,0.5"}).code, 2);
}

TEST(Cli, Constants) {
  const auto r = invoke({"constants", "--alpha", "0.25"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const double g = j["gamma"].get<double>();
  // the truncated series is only as good as its own tail bound
  const double allow = std::max(1e-6, j["series_tail_bound"].get<double>());
  EXPECT_NEAR(j["series"].get<double>(), g, allow);
  EXPECT_NEAR(j["quadrature"].get<double>(), g, 1e-6);
  EXPECT_NEAR(g, 0.98474720404304198852, 1e-12);
}

TEST(Cli, SweepCsvDeterministicAndRoundTrips) {
  const std::vector<std::string> args = {"sweep", "--alpha", "0.25", "1/2",
                                         "--min-exp", "3", "--max-exp", "8"};
  auto with_workers = args;
  with_workers.insert(with_workers.end(), {"--workers", "4"});
  const auto a = invoke(args);
  const auto b = invoke(with_workers);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto l = lines(a.out);
  ASSERT_EQ(l.size(), 2u + 12u);
  EXPECT_EQ(l[0], "# schema=1");
  EXPECT_EQ(l[1],
            "n,alpha,norm,norm_sq,upper,best_lower,best_m,ratio,regime,"
            "iterations,residual");

  const auto j = invoke({"sweep", "--alpha", "0.25", "1/2", "--min-exp", "3",
                         "--max-exp", "8", "--format", "json"});
  ASSERT_EQ(j.code, 0);
  const auto parsed = nlohmann::json::parse(j.out);
  ASSERT_EQ(parsed.size(), 12u);
  // CSV text and JSON numbers must both reproduce the same doubles.
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    std::vector<std::string> fields;
    std::stringstream row(l[i + 2]);
    for (std::string f; std::getline(row, f, ',');) fields.push_back(f);
    ASSERT_EQ(fields.size(), 11u);
    EXPECT_EQ(std::strtod(fields[2].c_str(), nullptr),
              parsed[i]["norm"].get<double>());
    EXPECT_EQ(std::strtod(fields[4].c_str(), nullptr),
              parsed[i]["upper"].get<double>());
    EXPECT_EQ(fields[8], parsed[i]["regime"].get<std::string>());
  }
}

TEST(Cli, SweepValidatesBeforeWriting) {
  const auto path = temp_path("bad.csv");
  std::filesystem::remove(path);
  const auto r = invoke({"sweep", "--alpha", "0.3", "--n", "8", "4", "--out",
                         path.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(std::filesystem::exists(path));
}

TEST(Cli, OutFile) {
  const auto path = temp_path("coeffs.csv");
  const auto r = invoke({"coeffs", "--n", "3", "--alpha", "0.3", "--out",
                         path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), invoke({"coeffs", "--n", "3", "--alpha", "0.3"}).out);
  std::filesystem::remove(path);
}

TEST(Cli, VerifyPaperSuite) {
  const auto r = invoke({"verify", "--suite", "paper"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("all checks passed"), std::string::npos);
  for (const auto& l : lines(r.out))
    if (l.rfind("FAIL", 0) == 0) ADD_FAILURE() << l;
}

TEST(Cli, VerifyPropertiesSuite) {
  const auto r = invoke({"verify", "--suite", "properties"});
  EXPECT_EQ(r.code, 0) << r.out;
}

} // namespace
