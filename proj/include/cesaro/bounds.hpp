#pragma once

// Certified brackets for ||sigma_n^alpha||^2:
//   max_m m * S~_m  <=  ||T||^2  <=  (n+1) * S,
// with S~_m = sum_{k=m}^n |c_{k+1} - c_k|^2 and S = S~_1, together with the
// closed-form Gamma estimates of S and S~_m.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "cesaro/errors.hpp"
#include "cesaro/kernel.hpp"
#include "cesaro/specfun.hpp"

namespace cesaro {

struct DiffEnergy {
  double total;               ///< S = S~_1
  std::vector<double> suffix; ///< suffix[m-1] = S~_m, m = 1..n
};

/// One descending pass; the k = n term is c_n^2 because c_{n+1} = 0.
inline DiffEnergy diff_energy(const CesaroKernel& kernel) {
  const std::size_t n = kernel.degree();
  if (n < 1)
    throw DomainError("diff_energy: n must be at least 1");
  const std::vector<double> d = forward_differences(kernel);
  std::vector<double> suffix(n);
  detail::CompensatedSum acc;
  for (std::size_t k = n; k >= 1; --k) {
    acc.add(d[k - 1] * d[k - 1]);
    suffix[k - 1] = acc.value();
  }
  return {suffix.front(), std::move(suffix)};
}

/// (n+1) S.
inline double upper_certificate(const CesaroKernel& kernel) {
  return (static_cast<double>(kernel.degree()) + 1.0) *
         diff_energy(kernel).total;
}

inline double lower_certificate(const DiffEnergy& energy, std::size_t m) {
  if (m < 1 || m > energy.suffix.size())
    throw DomainError("lower_certificate: m must lie in 1..n");
  return static_cast<double>(m) * energy.suffix[m - 1];
}

/// m S~_m for a single m in 1..n.
inline double lower_certificate(const CesaroKernel& kernel, std::size_t m) {
  if (kernel.degree() < 1 || m < 1 || m > kernel.degree())
    throw DomainError("lower_certificate: m must lie in 1..n");
  return lower_certificate(diff_energy(kernel), m);
}

struct BestLower {
  double value;
  std::size_t m_star;
};

/// max over m of m S~_m; ties go to the smaller m.
inline BestLower best_lower(const DiffEnergy& energy) {
  BestLower best{-1.0, 0};
  for (std::size_t m = 1; m <= energy.suffix.size(); ++m) {
    const double v = static_cast<double>(m) * energy.suffix[m - 1];
    if (v > best.value)
      best = {v, m};
  }
  return best;
}

inline BestLower best_lower(const CesaroKernel& kernel) {
  return best_lower(diff_energy(kernel));
}

namespace detail {

inline void check_closed_form_args(std::size_t n, double alpha,
                                   const char* what) {
  if (n < 2)
    throw DomainError(std::string(what) + ": n must exceed 1");
  require_open_unit(alpha, what);
}

// (x^e - 1)/e, written with expm1 so that it stays accurate as e -> 0
// (alpha -> 1/2), where it tends to log x.
inline double pow_quotient(double x, double e) {
  const double l = std::log(x);
  if (e == 0.0) return l;
  return std::expm1(e * l) / e;
}

} // namespace detail

/// Upper estimate of S. The alpha = 1/2 branch is taken only on exact
/// equality with 0.5.
inline double closed_form_upper(std::size_t n, double alpha) {
  detail::check_closed_form_args(n, alpha, "closed_form_upper");
  const double nd = static_cast<double>(n);
  if (alpha == 0.5) {
    return std::numbers::pi / 4.0 * (nd + 1.0) / ((nd + 0.5) * (nd + 0.5)) *
           (1.0 + (std::log(nd - 1.0) + 1.0) / std::numbers::pi);
  }
  const double g1 = std::exp(2.0 * log_gamma(alpha + 1.0));
  const double g0 = std::exp(2.0 * log_gamma(alpha));
  const double e = 2.0 * alpha - 1.0;
  // ((n-1)^e + 2 alpha - 2)/e == ((n-1)^e - 1)/e + 1
  return g1 * std::pow(nd + 1.0, 2.0 - 2.0 * alpha) /
         ((nd + alpha) * (nd + alpha)) *
         (1.0 + (detail::pow_quotient(nd - 1.0, e) + 1.0) / g0);
}

/// Lower estimate of S~_m for 1 <= m < n.
inline double closed_form_lower(std::size_t n, double alpha, std::size_t m) {
  detail::check_closed_form_args(n, alpha, "closed_form_lower");
  if (m < 1 || m >= n)
    throw DomainError("closed_form_lower: m must lie in 1..n-1");
  const double nd = static_cast<double>(n);
  const double tail = nd - static_cast<double>(m) + 2.0;
  if (alpha == 0.5) {
    return std::numbers::pi / 4.0 * nd / ((nd + 0.5) * (nd + 0.5)) *
           (1.0 + (std::log(tail) - std::log(2.0)) / std::numbers::pi);
  }
  const double g1 = std::exp(2.0 * log_gamma(alpha + 1.0));
  const double g0 = std::exp(2.0 * log_gamma(alpha));
  const double e = 2.0 * alpha - 1.0;
  return g1 * std::pow(nd, 2.0 - 2.0 * alpha) /
         ((nd + alpha) * (nd + alpha)) *
         (1.0 + (detail::pow_quotient(tail, e) - detail::pow_quotient(2.0, e)) /
                    g0);
}

/// Which proof's choice of m to reproduce.
enum class MRegime {
  gamma, ///< floor((n-1)/2^gamma), alpha < 1/2
  half,  ///< same formula, alpha = 1/2
  above  ///< floor((n-1)/(2 alpha)), alpha > 1/2
};

/// The m used in the lower-bound arguments, clamped to [1, n-1].
inline std::size_t proof_m_choice(std::size_t n, double alpha, MRegime regime,
                                  double gamma = 0.5) {
  if (n < 2)
    throw DomainError("proof_m_choice: n must exceed 1");
  double raw = 0.0;
  const double top = static_cast<double>(n) - 1.0;
  switch (regime) {
  case MRegime::gamma:
  case MRegime::half:
    if (!(gamma > 0.0 && gamma < 1.0))
      throw DomainError("proof_m_choice: gamma must lie in (0, 1)");
    raw = std::floor(top / std::pow(2.0, gamma));
    break;
  case MRegime::above:
    if (!(alpha > 0.0))
      throw DomainError("proof_m_choice: alpha must be positive");
    raw = std::floor(top / (2.0 * alpha));
    break;
  }
  if (raw < 1.0) return 1;
  if (raw > top) return n - 1;
  return static_cast<std::size_t>(raw);
}

inline MRegime regime_for(double alpha) {
  if (alpha < 0.5) return MRegime::gamma;
  if (alpha == 0.5) return MRegime::half;
  return MRegime::above;
}

struct NormBracket {
  std::size_t n = 0;
  double alpha = 0.0;
  double diff_energy = 0.0; ///< S
  double lower = 0.0;       ///< best m S~_m
  std::size_t lower_m = 0;
  double upper = 0.0; ///< (n+1) S
  /// (n+1) times the closed-form upper estimate of S; NaN outside n > 1,
  /// alpha in (0, 1).
  double closed_upper = std::nan("");
  /// m times the closed-form lower estimate of S~_m at the proof's m.
  double closed_lower = std::nan("");
  std::size_t closed_lower_m = 0;
};

inline NormBracket bracket(const CesaroKernel& kernel, double gamma = 0.5) {
  NormBracket b;
  b.n = kernel.degree();
  b.alpha = kernel.alpha();
  const DiffEnergy energy = diff_energy(kernel);
  b.diff_energy = energy.total;
  b.upper = (static_cast<double>(b.n) + 1.0) * energy.total;
  const BestLower best = best_lower(energy);
  b.lower = best.value;
  b.lower_m = best.m_star;
  if (b.n > 1 && b.alpha > 0.0 && b.alpha < 1.0) {
    b.closed_upper = (static_cast<double>(b.n) + 1.0) *
                     closed_form_upper(b.n, b.alpha);
    b.closed_lower_m =
        proof_m_choice(b.n, b.alpha, regime_for(b.alpha), gamma);
    b.closed_lower = static_cast<double>(b.closed_lower_m) *
                     closed_form_lower(b.n, b.alpha, b.closed_lower_m);
  }
  return b;
}

} // namespace cesaro
