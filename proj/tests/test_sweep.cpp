#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cesaro/io.hpp"
#include "cesaro/sweep.hpp"

namespace {

using namespace cesaro;

TEST(AsymptoteRatio, Regimes) {
  // alpha = 0: ratio = sqrt((n+1)/n) with the exact norm.
  for (std::size_t n : {2u, 100u, 1u << 20}) {
    const double nd = static_cast<double>(n);
    EXPECT_NEAR(asymptote_ratio(n, 0.0, std::sqrt(nd + 1.0)),
                std::sqrt((nd + 1.0) / nd), 1e-15);
  }
  EXPECT_EQ(asymptote_ratio(64, 1.0, 0.9), 0.9);
  EXPECT_EQ(asymptote_ratio(64, 0.7, 1.25), 1.25);
  EXPECT_NEAR(asymptote_ratio(std::size_t{1} << 10, 0.5, 1.0),
              1.0 / (0.5 * std::sqrt(10.0 * std::log(2.0))), 1e-15);
  EXPECT_NEAR(asymptote_ratio(16, 0.25, 2.0),
              2.0 / (c_alpha_gamma(0.25) * 2.0), 1e-15);
  EXPECT_THROW(asymptote_ratio(1, 0.3, 1.0), DomainError);
}

TEST(AsymptoteRatio, QuarterAtTwoToSixteen) {
  const auto r = evaluate_point(std::size_t{1} << 16, 0.25, 1e-8, 20000);
  EXPECT_GE(r.ratio, 0.85);
  EXPECT_LE(r.ratio, 1.15);
}

TEST(LimitBracket, Values) {
  const auto b = limit_bracket(0.75);
  EXPECT_NEAR(b.high, 1.0606601717798212866, 1e-15);
  EXPECT_EQ(b.low, 1.0);
  const auto c = limit_bracket(0.6);
  EXPECT_NEAR(c.high, 1.3416407864998738178, 1e-15);
  EXPECT_NEAR(c.low, 1.0238362555396096481, 1e-14);
  const auto d = limit_bracket(0.9);
  EXPECT_NEAR(d.high, 1.0062305898749053634, 1e-15);
  EXPECT_EQ(d.low, 1.0);
}

TEST(LimitBracket, Edges) {
  const auto near_one = limit_bracket(1.0 - 1e-9);
  EXPECT_NEAR(near_one.high, 1.0, 1e-8);
  EXPECT_NEAR(near_one.low, 1.0, 1e-8);
  EXPECT_GT(limit_bracket(0.5 + 1e-12).high, 1e5);
  for (double a = 0.51; a < 1.0; a += 0.01) {
    const auto b = limit_bracket(a);
    EXPECT_LE(b.low, b.high) << a;
    EXPECT_GE(b.low, 1.0);
  }
  EXPECT_THROW(limit_bracket(0.5), DomainError);
  EXPECT_THROW(limit_bracket(1.0), DomainError);
}

TEST(Sweep, Validation) {
  SweepConfig c;
  EXPECT_THROW(run_sweep(c), DomainError);
  c.alphas = {0.3};
  c.n_values = {4, 4};
  EXPECT_THROW(run_sweep(c), DomainError);
  c.n_values = {1, 4};
  EXPECT_THROW(run_sweep(c), DomainError);
  c.n_values = {4, 8};
  c.alphas = {1.2};
  EXPECT_THROW(run_sweep(c), DomainError);
  c.alphas = {0.2};
  c.tol = -1.0;
  EXPECT_THROW(run_sweep(c), DomainError);
  c.tol.reset();
  c.n_values = {4, kMaxDegree + 1};
  EXPECT_THROW(run_sweep(c), ResourceError);
}

TEST(Sweep, GeometricGrid) {
  EXPECT_EQ(SweepConfig::geometric(3, 6),
            (std::vector<std::size_t>{8, 16, 32, 64}));
  EXPECT_EQ(default_tolerance(std::size_t{1} << 13), 1e-10);
  EXPECT_EQ(default_tolerance((std::size_t{1} << 13) + 1), 1e-6);
}

SweepConfig small_config(std::size_t workers) {
  SweepConfig c;
  c.alphas = {0.75, 0.0, 0.3, 1.0, 0.5};
  c.n_values = SweepConfig::geometric(3, 11);
  c.workers = workers;
  return c;
}

TEST(Sweep, RecordsSortedAndCoherent) {
  const auto recs = run_sweep(small_config(3));
  ASSERT_EQ(recs.size(), 5u * 9u);
  for (std::size_t i = 1; i < recs.size(); ++i) {
    const bool ordered =
        recs[i - 1].alpha < recs[i].alpha ||
        (recs[i - 1].alpha == recs[i].alpha && recs[i - 1].n < recs[i].n);
    EXPECT_TRUE(ordered) << i;
  }
  for (const auto& r : recs) {
    const double nd = static_cast<double>(r.n);
    EXPECT_LE(r.best_lower, r.norm_sq * (1.0 + 1e-9));
    EXPECT_LE(r.norm_sq, r.upper * (1.0 + 1e-9));
    EXPECT_GE(r.norm, nd / (nd + r.alpha) - 1e-12);
    EXPECT_EQ(r.regime, regime_of(r.alpha));
    EXPECT_EQ(r.ratio, asymptote_ratio(r.n, r.alpha, r.norm));
    EXPECT_LT(r.residual, 1e-10);
    if (r.alpha == 0.0) {
      EXPECT_NEAR(r.norm_sq, nd + 1.0, 1e-9 * (nd + 1.0));
    }
    if (r.alpha == 1.0) {
      EXPECT_NEAR(r.norm_sq, nd / (nd + 1.0), 1e-9);
    }
  }
}

TEST(Sweep, DeterministicAcrossWorkerCounts) {
  const std::string one = io::sweep_csv(run_sweep(small_config(1)));
  const std::string four = io::sweep_csv(run_sweep(small_config(4)));
  const std::string again = io::sweep_csv(run_sweep(small_config(4)));
  EXPECT_EQ(one, four);
  EXPECT_EQ(four, again);
}

TEST(Sweep, WorkerEnvironment) {
  SweepConfig c;
  ::setenv("CESARO_WORKERS", "6", 1);
  EXPECT_EQ(worker_count(c), 6u);
  ::setenv("CESARO_WORKERS", "zero", 1);
  EXPECT_EQ(worker_count(c), 1u);
  c.workers = 2;
  EXPECT_EQ(worker_count(c), 2u);
  ::unsetenv("CESARO_WORKERS");
}

TEST(Sweep, NonConvergenceKeptAsRow) {
  SweepConfig c;
  c.alphas = {0.5};
  c.n_values = {512, 1024};
  c.tol = 1e-15;
  c.max_iter = 3;
  const auto recs = run_sweep(c);
  ASSERT_EQ(recs.size(), 2u);
  for (const auto& r : recs) {
    EXPECT_GT(r.residual, 1e-15);
    EXPECT_GT(r.norm, 0.0);
  }
}

TEST(TrendCheck, PartialSumsDecreaseToOne) {
  SweepConfig c;
  c.alphas = {0.0};
  c.n_values = SweepConfig::geometric(3, 12);
  const auto rep = trend_check(run_sweep(c));
  ASSERT_EQ(rep.columns.size(), 1u);
  EXPECT_TRUE(rep.passed()) << rep.columns[0].detail;
  EXPECT_NEAR(rep.columns[0].final_gap, std::sqrt(4097.0 / 4096.0) - 1.0, 1e-9);
}

TEST(TrendCheck, BelowHalfConverges) {
  SweepConfig c;
  c.alphas = {0.1};
  c.n_values = SweepConfig::geometric(8, 16);
  const auto rep = trend_check(run_sweep(c));
  EXPECT_TRUE(rep.passed()) << rep.columns[0].detail;
  EXPECT_LT(rep.columns[0].final_gap, 0.1);
}

TEST(TrendCheck, AboveHalfBracket) {
  SweepConfig c;
  c.alphas = {0.6, 0.75, 1.0};
  c.n_values = SweepConfig::geometric(10, 15);
  c.workers = 3;
  const auto rep = trend_check(run_sweep(c));
  for (const auto& col : rep.columns)
    EXPECT_TRUE(col.in_bracket) << col.alpha << ": " << col.detail;
}

TEST(TrendCheck, FlagsRisingGap) {
  std::vector<SweepRecord> recs;
  const double ratios[] = {1.4, 1.3, 1.2, 1.25, 1.1};
  for (std::size_t i = 0; i < 5; ++i) {
    SweepRecord r;
    r.n = std::size_t{8} << i;
    r.alpha = 0.2;
    r.ratio = ratios[i];
    recs.push_back(r);
  }
  const auto rep = trend_check(recs);
  EXPECT_FALSE(rep.passed());
  EXPECT_FALSE(rep.columns[0].monotone);
  EXPECT_NE(rep.columns[0].detail.find("rises"), std::string::npos);
}

TEST(TrendCheck, InsufficientGrid) {
  SweepConfig c;
  c.alphas = {0.2};
  c.n_values = {8, 16, 32};
  EXPECT_THROW(trend_check(run_sweep(c)), DomainError);
  EXPECT_THROW(trend_check({}), DomainError);
}

TEST(SweepCsv, SchemaAndHeader) {
  SweepConfig c;
  c.alphas = {0.25};
  c.n_values = {4, 8};
  const std::string csv = io::sweep_csv(run_sweep(c));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# schema=1");
  std::getline(in, line);
  EXPECT_EQ(line,
            "n,alpha,norm,norm_sq,upper,best_lower,best_m,ratio,regime,"
            "iterations,residual");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_NE(line.find(",below_half,"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 2);
}

TEST(SweepCsv, FloatsRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, 0.98474720404304198852,
                   std::nextafter(1.0, 2.0)}) {
    const std::string s = io::format_double(v);
    EXPECT_EQ(std::strtod(s.c_str(), nullptr), v) << s;
  }
}

TEST(SweepJson, MirrorsFields) {
  SweepConfig c;
  c.alphas = {0.8};
  c.n_values = {4, 8};
  const auto recs = run_sweep(c);
  const auto j = io::sweep_json(recs);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 2u);
  for (const char* key : {"n", "alpha", "norm", "norm_sq", "upper", "best_lower",
                          "best_m", "ratio", "regime", "iterations", "residual"})
    EXPECT_TRUE(j[0].contains(key)) << key;
  EXPECT_EQ(j[1]["norm_sq"].get<double>(), recs[1].norm_sq);
  EXPECT_EQ(j[0]["regime"].get<std::string>(), "above_half");
}

} // namespace
