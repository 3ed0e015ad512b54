#pragma once

// Self-checks behind `cesaro verify`. Each check records a name, a verdict
// and a one-line diagnostic; nothing here throws on a failed check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cesaro/bounds.hpp"
#include "cesaro/dirichlet.hpp"
#include "cesaro/hadamard.hpp"
#include "cesaro/kernel.hpp"
#include "cesaro/specfun.hpp"
#include "cesaro/sweep.hpp"

namespace cesaro::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

enum class Suite { paper, properties, asymptotics, all };

struct Options {
  bool deep = false; ///< asymptotics up to n = 2^20 instead of 2^14
};

namespace detail {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

class Recorder {
public:
  void check(std::string name, bool ok, std::string detail) {
    results_.push_back({std::move(name), ok, std::move(detail)});
  }
  // Runs body; any exception counts as a failure of that check.
  void guarded(const std::string& name,
               const std::function<void(Recorder&)>& body) {
    try {
      body(*this);
    } catch (const std::exception& e) {
      check(name, false, std::string("exception: ") + e.what());
    }
  }
  std::vector<CheckResult> take() { return std::move(results_); }

private:
  std::vector<CheckResult> results_;
};

inline std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

inline void reference_checks(Recorder& rec) {
  rec.guarded("endpoint-norms", [](Recorder& r) {
    double worst = 0.0;
    for (std::size_t n : {1, 2, 5, 10, 100, 1000}) {
      const double nd = static_cast<double>(n);
      const auto r0 = operator_norm(from_kernel(coefficients(n, 0.0)), 1e-12, 20000);
      const auto r1 = operator_norm(from_kernel(coefficients(n, 1.0)), 1e-12, 20000);
      worst = std::max({worst, rel_err(r0.norm_sq, nd + 1.0),
                        rel_err(r1.norm_sq, nd / (nd + 1.0))});
    }
    r.check("endpoint-norms", worst <= 1e-9, "max rel err " + fmt(worst));
  });

  rec.guarded("maximizer-sharpness", [](Recorder& r) {
    double worst = 0.0;
    for (std::size_t n : {2, 5, 10, 50}) {
      const double nd = static_cast<double>(n);
      std::vector<Complex> a0(n + 2), a1(n + 2);
      a0[0] = 1.0; a0[n] = -(nd + 1.0); a0[n + 1] = nd;
      a1[0] = nd; a1[1] = -(nd + 1.0); a1[n + 1] = 1.0;
      const double q0 = rayleigh_quotient(coefficients(n, 0.0), Polynomial(a0));
      const double q1 = rayleigh_quotient(coefficients(n, 1.0), Polynomial(a1));
      worst = std::max({worst, rel_err(q0, nd + 1.0), rel_err(q1, nd / (nd + 1.0))});
    }
    r.check("maximizer-sharpness", worst <= 1e-12, "max rel err " + fmt(worst));
  });

  rec.guarded("eigenvalue-family", [](Recorder& r) {
    bool ok = true;
    double worst = 0.0;
    for (std::size_t n = 2; n <= 64; ++n)
      for (double a : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const auto op = from_kernel(coefficients(n, a));
        for (std::size_t k = 1; k <= op.dimension(); ++k) {
          const double res = eigen_check(op, k);
          const double scale = std::max(1.0, std::abs(op.diagonal()[k - 1]));
          worst = std::max(worst, res / scale);
          ok = ok && res <= 1e-14 * scale;
        }
        const double nd = static_cast<double>(n);
        ok = ok && operator_norm(op, 1e-12, 20000).norm >= nd / (nd + a);
      }
    r.check("eigenvalue-family", ok, "max scaled residual " + fmt(worst));
  });

  rec.guarded("gautschi", [](Recorder& r) {
    bool ok = true;
    for (double x : {0.5, 1.0, 2.0, 5.0, 10.0, 100.0, 1e4})
      for (double a : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        const auto b = gautschi_bounds(x, a);
        const double q = std::exp(log_gamma(x + a) - log_gamma(x + 1.0));
        ok = ok && b.lower < q && q < b.upper;
      }
    r.check("gautschi", ok, "35-point grid");
  });

  rec.guarded("cn-asymptotic", [](Recorder& r) {
    bool ok = true;
    for (std::size_t n : {1, 2, 10, 1000, 100000})
      for (double a : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        const auto k = coefficients(n, a);
        const double cn2 = k[n] * k[n];
        const auto b = tail_asymptotic_cn(n, a);
        ok = ok && b.lower < cn2 && cn2 < b.upper;
      }
    r.check("cn-asymptotic", ok, "c_n^2 strictly inside the Gamma bracket");
  });

  rec.guarded("closed-form-bracketing", [](Recorder& r) {
    bool ok = true;
    for (std::size_t n : {2, 3, 7, 20, 100, 1000})
      for (double a : {0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9}) {
        const auto k = coefficients(n, a);
        const auto e = diff_energy(k);
        ok = ok && e.total <= closed_form_upper(n, a);
        for (std::size_t m = 1; m < n; ++m)
          ok = ok && closed_form_lower(n, a, m) <= e.suffix[m - 1];
      }
    r.check("closed-form-bracketing", ok, "S <= closed upper, closed lower <= S~_m");
  });
}

inline void property_checks(Recorder& rec) {
  rec.guarded("kernel-oracle", [](Recorder& r) {
    double worst = 0.0;
    for (std::size_t n = 0; n <= 200; ++n)
      for (double a : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
        const auto k1 = coefficients(n, a);
        const auto k2 = coefficients_gamma(n, a);
        for (std::size_t i = 0; i <= n; ++i)
          worst = std::max(worst, rel_err(k1[i], k2[i]));
      }
    r.check("kernel-oracle", worst <= 1e-11, "max rel err " + fmt(worst));
  });

  rec.guarded("dense-equivalence", [](Recorder& r) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    double worst = 0.0;
    for (std::size_t n : {1, 3, 17, 64, 199})
      for (double a : {0.0, 0.3, 0.5, 0.8, 1.0}) {
        const auto op = from_kernel(coefficients(n, a));
        const auto m = dense(op);
        std::vector<double> x(op.dimension());
        for (auto& v : x) v = g(rng);
        const auto y = matvec(op, x);
        const auto yt = matvec_adjoint(op, x);
        double scale = 0.0, err = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
          double s = 0.0, st = 0.0;
          for (std::size_t j = 0; j < x.size(); ++j) {
            s += m(i, j) * x[j];
            st += m(j, i) * x[j];
          }
          err = std::max({err, std::abs(s - y[i]), std::abs(st - yt[i])});
          scale = std::max({scale, std::abs(s), std::abs(st)});
        }
        worst = std::max(worst, err / std::max(scale, 1.0));
      }
    r.check("dense-equivalence", worst <= 1e-13, "max rel err " + fmt(worst));
  });

  rec.guarded("intertwining", [](Recorder& r) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    double worst = 0.0;
    for (std::size_t n : {1, 4, 25, 100})
      for (double a : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        const auto kernel = coefficients(n, a);
        const auto op = from_kernel(kernel);
        for (int trial = 0; trial < 50; ++trial) {
          std::vector<Complex> coeffs(n + 2);
          for (auto& z : coeffs) z = {g(rng), g(rng)};
          const Polynomial f(coeffs);
          auto lhs = tail_transform(apply(kernel, f));
          lhs.resize(n + 1);
          const auto rhs = matvec(op, tail_transform(f));
          double err = 0.0, scale = 0.0;
          for (std::size_t i = 0; i <= n; ++i) {
            err = std::max(err, std::abs(lhs[i] - rhs[i]));
            scale = std::max(scale, std::abs(rhs[i]));
          }
          worst = std::max(worst, err / std::max(scale, 1.0));
        }
      }
    r.check("intertwining", worst <= 1e-12, "max rel err " + fmt(worst));
  });

  rec.guarded("bound-sandwich", [](Recorder& r) {
    bool ok = true;
    for (std::size_t n : {1, 2, 5, 33, 256, 2048})
      for (double a : {0.0, 0.2, 0.5, 0.7, 1.0}) {
        const auto kernel = coefficients(n, a);
        const auto nr = operator_norm(from_kernel(kernel), 1e-10, 20000);
        const auto b = bracket(kernel);
        ok = ok && b.lower <= nr.norm_sq + 1e-9 && nr.norm_sq <= b.upper + 1e-9;
      }
    r.check("bound-sandwich", ok, "best_lower <= norm^2 <= (n+1) S");
  });

  rec.guarded("c-alpha-three-way", [](Recorder& r) {
    bool ok = true;
    double worst = 0.0;
    for (double a : {0.05, 0.1, 0.25, 0.4, 0.45}) {
      const double g = c_alpha_gamma(a);
      const auto s = c_alpha_series(a, 1000000);
      const double q = c_alpha_quadrature(a, 1e-7);
      const double allow = std::max(1e-6, s.tail_bound);
      ok = ok && std::abs(g - q) <= 1e-6 && std::abs(g - s.value) <= allow &&
           std::abs(s.value - q) <= allow;
      worst = std::max(worst, std::abs(g - q));
    }
    r.check("c-alpha-three-way", ok, "max |gamma - quadrature| " + fmt(worst));
  });
}

inline void asymptotic_checks(Recorder& rec, const Options& opts) {
  rec.guarded("asymptotic-trends", [&](Recorder& r) {
    SweepConfig cfg;
    cfg.alphas = {0.0, 0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9, 1.0};
    cfg.n_values = SweepConfig::geometric(10, opts.deep ? 20 : 14);
    const auto records = run_sweep(cfg);

    bool sandwich = true;
    for (const auto& rec_ : records) {
      const double nd = static_cast<double>(rec_.n);
      sandwich = sandwich && rec_.best_lower <= rec_.norm_sq + 1e-9 &&
                 rec_.norm_sq <= rec_.upper + 1e-9 &&
                 rec_.norm >= nd / (nd + rec_.alpha) - 1e-12;
    }
    r.check("sweep-sandwich", sandwich,
            std::to_string(records.size()) + " records");

    const TrendReport report = trend_check(records);
    for (const auto& col : report.columns)
      r.check("trend alpha=" + fmt(col.alpha), col.passed, col.detail);
  });
}

} // namespace detail

inline std::vector<CheckResult> run(Suite suite, const Options& opts = {}) {
  detail::Recorder rec;
  if (suite == Suite::paper || suite == Suite::all) detail::reference_checks(rec);
  if (suite == Suite::properties || suite == Suite::all)
    detail::property_checks(rec);
  if (suite == Suite::asymptotics || suite == Suite::all)
    detail::asymptotic_checks(rec, opts);
  return rec.take();
}

} // namespace cesaro::verify
