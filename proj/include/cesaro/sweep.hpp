#pragma once

// Grid runner for the large-n behaviour of ||sigma_n^alpha||:
//   alpha < 1/2 : norm ~ C_alpha n^(1/2 - alpha)
//   alpha = 1/2 : norm ~ (1/2) (ln n)^(1/2)
//   alpha > 1/2 : norm eventually inside [low, high] from limit_bracket

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "cesaro/bounds.hpp"
#include "cesaro/errors.hpp"
#include "cesaro/hadamard.hpp"
#include "cesaro/kernel.hpp"
#include "cesaro/specfun.hpp"

namespace cesaro {

enum class Regime { below_half, half, above_half };

inline Regime regime_of(double alpha) {
  if (alpha < 0.5) return Regime::below_half;
  if (alpha == 0.5) return Regime::half;
  return Regime::above_half;
}

inline std::string_view to_string(Regime r) {
  switch (r) {
  case Regime::below_half: return "below_half";
  case Regime::half: return "half";
  case Regime::above_half: return "above_half";
  }
  return "?";
}

/// Regime-normalized norm: norm / (C_alpha n^(1/2-alpha)) below 1/2,
/// norm / ((1/2) sqrt(ln n)) at 1/2, and the norm itself above.
inline double asymptote_ratio(std::size_t n, double alpha, double norm) {
  if (n < 2) throw DomainError("asymptote_ratio: n must be at least 2");
  const double nd = static_cast<double>(n);
  switch (regime_of(alpha)) {
  case Regime::below_half:
    return norm / (c_alpha_gamma(alpha) * std::pow(nd, 0.5 - alpha));
  case Regime::half:
    return norm / (0.5 * std::sqrt(std::log(nd)));
  case Regime::above_half:
    break;
  }
  return norm;
}

struct Bracket {
  double low;
  double high;
};

/// Limits for ||sigma_n^alpha|| as n -> infinity, 1/2 < alpha < 1:
/// low = max{1, a/(2a-1)^(1/2) * (2a-1)^(a-1/2)/(2a)^a}, high = a/(2a-1)^(1/2).
inline Bracket limit_bracket(double alpha) {
  if (!(alpha > 0.5 && alpha < 1.0))
    throw DomainError("limit_bracket: alpha must lie in (1/2, 1)");
  const double e = 2.0 * alpha - 1.0;
  const double high = alpha / std::sqrt(e);
  const double second = high * std::pow(e, alpha - 0.5) /
                        std::pow(2.0 * alpha, alpha);
  return {std::max(1.0, second), high};
}

namespace detail {

// limit_bracket extended continuously to alpha = 1, where it is [1, 1].
inline Bracket closed_limit_bracket(double alpha) {
  if (alpha == 1.0) return {1.0, 1.0};
  return cesaro::limit_bracket(alpha);
}

} // namespace detail

struct SweepConfig {
  std::vector<double> alphas;
  std::vector<std::size_t> n_values;
  /// Fixed solver tolerance; unset means 1e-10 up to n = 2^13, 1e-6 above.
  std::optional<double> tol;
  std::size_t max_iter = 20000;
  /// 0 means CESARO_WORKERS or 1.
  std::size_t workers = 0;

  static std::vector<std::size_t> geometric(unsigned lo_exp, unsigned hi_exp) {
    std::vector<std::size_t> out;
    for (unsigned e = lo_exp; e <= hi_exp; ++e)
      out.push_back(std::size_t{1} << e);
    return out;
  }
};

struct SweepRecord {
  std::size_t n = 0;
  double alpha = 0.0;
  double norm = 0.0;
  double norm_sq = 0.0;
  double upper = 0.0;
  double best_lower = 0.0;
  std::size_t best_m = 0;
  double ratio = 0.0;
  Regime regime = Regime::below_half;
  std::size_t iterations = 0;
  double residual = 0.0;
};

inline double default_tolerance(std::size_t n) {
  return n <= (std::size_t{1} << 13) ? 1e-10 : 1e-6;
}

inline void validate(const SweepConfig& config) {
  if (config.alphas.empty() || config.n_values.empty())
    throw DomainError("sweep: alphas and n_values must be non-empty");
  for (double a : config.alphas)
    if (!(a >= 0.0 && a <= 1.0))
      throw DomainError("sweep: alpha values must lie in [0, 1]");
  for (std::size_t i = 0; i < config.n_values.size(); ++i) {
    if (config.n_values[i] < 2)
      throw DomainError("sweep: n values must be at least 2");
    if (i > 0 && config.n_values[i] <= config.n_values[i - 1])
      throw DomainError("sweep: n values must be strictly increasing");
    if (config.n_values[i] > kMaxDegree)
      throw ResourceError("sweep: n exceeds the supported maximum");
  }
  if (config.tol && !(*config.tol > 0.0))
    throw DomainError("sweep: tol must be positive");
}

/// One grid point; solver non-convergence is kept as a partial row.
inline SweepRecord evaluate_point(std::size_t n, double alpha, double tol,
                                  std::size_t max_iter) {
  const CesaroKernel kernel = coefficients(n, alpha);
  const MultiplierOperator op = from_kernel(kernel);
  NormResult result;
  try {
    result = operator_norm(op, tol, max_iter);
  } catch (const NormConvergenceError& e) {
    result = e.partial();
  }
  const DiffEnergy energy = diff_energy(kernel);
  const BestLower best = best_lower(energy);

  SweepRecord r;
  r.n = n;
  r.alpha = alpha;
  r.norm = result.norm;
  r.norm_sq = result.norm_sq;
  r.upper = (static_cast<double>(n) + 1.0) * energy.total;
  r.best_lower = best.value;
  r.best_m = best.m_star;
  r.ratio = asymptote_ratio(n, alpha, result.norm);
  r.regime = regime_of(alpha);
  r.iterations = result.iterations;
  r.residual = result.residual;
  return r;
}

inline std::size_t worker_count(const SweepConfig& config) {
  if (config.workers > 0) return config.workers;
  if (const char* env = std::getenv("CESARO_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

/// Records sorted by alpha then n, independent of scheduling.
inline std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
  validate(config);
  std::vector<double> alphas = config.alphas;
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());

  std::vector<std::pair<double, std::size_t>> points;
  for (double a : alphas)
    for (std::size_t n : config.n_values) points.emplace_back(a, n);

  std::vector<SweepRecord> records(points.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      const auto [a, n] = points[i];
      const double tol = config.tol.value_or(default_tolerance(n));
      records[i] = evaluate_point(n, a, tol, config.max_iter);
    }
  };
  const std::size_t workers =
      std::min(worker_count(config), std::max<std::size_t>(points.size(), 1));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return records;
}

struct TrendOptions {
  /// Points at the end of each alpha column checked for monotone gaps.
  std::size_t window = 4;
  /// |ratio - 1| may rise by at most this much between neighbours; set to
  /// the solver tolerance used at large n.
  double monotone_floor = 1e-6;
  /// Relative widening of the limit bracket above 1/2.
  double bracket_slack = 0.02;
};

struct AlphaTrend {
  double alpha = 0.0;
  Regime regime = Regime::below_half;
  std::size_t final_n = 0;
  double final_ratio = 0.0;
  double final_gap = 0.0; ///< |ratio - 1| below and at 1/2
  bool monotone = true;
  bool in_bracket = true;
  bool passed = true;
  std::string detail;
};

struct TrendReport {
  std::vector<AlphaTrend> columns;
  bool passed() const {
    return std::all_of(columns.begin(), columns.end(),
                       [](const AlphaTrend& t) { return t.passed; });
  }
};

inline TrendReport trend_check(const std::vector<SweepRecord>& records,
                               const TrendOptions& options = {}) {
  std::map<double, std::vector<SweepRecord>> by_alpha;
  for (const auto& r : records) by_alpha[r.alpha].push_back(r);
  if (by_alpha.empty())
    throw DomainError("trend_check: no records");

  TrendReport report;
  for (auto& [alpha, column] : by_alpha) {
    if (column.size() < std::max<std::size_t>(options.window, 4))
      throw DomainError("trend_check: fewer than 4 grid points for alpha " +
                        std::to_string(alpha));
    std::sort(column.begin(), column.end(),
              [](const SweepRecord& a, const SweepRecord& b) { return a.n < b.n; });

    AlphaTrend t;
    t.alpha = alpha;
    t.regime = regime_of(alpha);
    t.final_n = column.back().n;
    t.final_ratio = column.back().ratio;
    std::ostringstream msg;
    if (t.regime == Regime::above_half) {
      const Bracket b = detail::closed_limit_bracket(alpha);
      const double lo = b.low * (1.0 - options.bracket_slack);
      const double hi = b.high * (1.0 + options.bracket_slack);
      t.final_gap = 0.0;
      t.in_bracket = column.back().norm >= lo && column.back().norm <= hi;
      msg << "norm " << column.back().norm << " vs [" << lo << ", " << hi
             << "]";
    } else {
      const std::size_t first = column.size() - options.window;
      for (std::size_t i = first; i + 1 < column.size(); ++i) {
        const double g0 = std::abs(column[i].ratio - 1.0);
        const double g1 = std::abs(column[i + 1].ratio - 1.0);
        if (g1 > g0 + options.monotone_floor) {
          t.monotone = false;
          msg << "gap rises at n=" << column[i + 1].n << " (" << g0
                 << " -> " << g1 << "); ";
        }
      }
      t.final_gap = std::abs(t.final_ratio - 1.0);
      msg << "final |ratio-1| = " << t.final_gap;
    }
    t.passed = t.monotone && t.in_bracket;
    t.detail = msg.str();
    report.columns.push_back(std::move(t));
  }
  return report;
}

} // namespace cesaro
