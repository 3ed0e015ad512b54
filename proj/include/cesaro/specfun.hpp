#pragma once

// Real log-Gamma, generalized binomial coefficients, Gautschi's ratio
// bounds and three independent evaluations of the growth constant C_alpha.

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "cesaro/errors.hpp"

namespace cesaro {

namespace detail {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline void require_open_unit(double alpha, const char* what) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError(std::string(what) + ": alpha must lie in (0, 1), got " +
                      std::to_string(alpha));
}

inline void require_below_half(double alpha, const char* what) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw DomainError(std::string(what) +
                      ": alpha must lie in (0, 1/2), got " +
                      std::to_string(alpha));
}

// Stirling series ln Gamma(x) for x >= 10. The first omitted term is
// below 1e-19 there.
inline double stirling_log_gamma(double x) noexcept {
  constexpr std::array<double, 8> coef = {
      1.0 / 12.0,          -1.0 / 360.0,   1.0 / 1260.0,
      -1.0 / 1680.0,       1.0 / 1188.0,   -691.0 / 360360.0,
      1.0 / 156.0,         -3617.0 / 122400.0};
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  for (auto it = coef.rbegin(); it != coef.rend(); ++it)
    series = series * inv2 + *it;
  constexpr double half_log_two_pi = 0.91893853320467274178;
  return (x - 0.5) * std::log(x) - x + half_log_two_pi + series * inv;
}

// ln Gamma(1+z) for |z| <= 1/2, from
// -log1p(z) + (1-gamma) z + sum_k (-1)^k (zeta(k)-1)/k z^k.
// Avoids the cancellation the upward shift suffers near the zeros at 1, 2.
inline double log_gamma_1p(double z) noexcept {
  constexpr std::array<double, 29> zeta_m1 = {
      0.64493406684822643647,    0.2020569031595942854,
      0.082323233711138191516,   0.036927755143369926331,
      0.017343061984449139715,   0.0083492773819228268398,
      0.0040773561979443393787,  0.0020083928260822144179,
      0.00099457512781808533715, 0.0004941886041194645587,
      0.00024608655330804829864, 0.00012271334757848914675,
      6.1248135058704829259e-5,  3.0588236307020493552e-5,
      1.5282259408651871733e-5,  7.6371976378997622736e-6,
      3.8172932649998398565e-6,  1.9082127165539389257e-6,
      9.5396203387279611315e-7,  4.7693298678780646312e-7,
      2.3845050272773299e-7,     1.1921992596531107307e-7,
      5.9608189051259479612e-8,  2.9803503514652280186e-8,
      1.4901554828365041235e-8,  7.450711789835429492e-9,
      3.7253340247884570548e-9,  1.8626597235130490064e-9,
      9.3132743241966818287e-10};
  constexpr double euler_gamma = 0.5772156649015328606065;
  double tail = 0.0;
  for (std::size_t i = zeta_m1.size(); i-- > 0;) {
    const double k = static_cast<double>(i + 2);
    tail = tail * -z + zeta_m1[i] / k;
  }
  return -std::log1p(z) + z * ((1.0 - euler_gamma) + z * tail);
}

} // namespace detail

/// ln Gamma(x) for x > 0. Near the zeros at 1 and 2 a power series is
/// used; other arguments below 10 are shifted upward with
/// ln Gamma(x) = ln Gamma(x + k) - ln(x (x+1) ... (x+k-1)).
inline double log_gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0)
    throw DomainError("log_gamma: argument must be positive and finite, got " +
                      std::to_string(x));
  if (x == 1.0 || x == 2.0)
    return 0.0;
  if (x >= 0.5 && x < 1.5)
    return detail::log_gamma_1p(x - 1.0);
  if (x >= 1.5 && x < 2.5) {
    const double z = x - 2.0;
    return detail::log_gamma_1p(z) + std::log1p(z);
  }
  double product = 1.0;
  while (x < 10.0) {
    product *= x;
    x += 1.0;
  }
  return detail::stirling_log_gamma(x) - std::log(product);
}

/// ln of the generalized binomial coefficient
/// Gamma(x+1) / (Gamma(y+1) Gamma(x-y+1)), for x >= y > -1.
inline double log_gen_binom(double x, double y) {
  if (!(y > -1.0 && x >= y) || !std::isfinite(x))
    throw DomainError("gen_binom: requires x >= y > -1");
  return log_gamma(x + 1.0) - log_gamma(y + 1.0) - log_gamma(x - y + 1.0);
}

inline double gen_binom(double x, double y) {
  return std::exp(log_gen_binom(x, y));
}

struct GautschiBounds {
  double lower; ///< (x+1)^(alpha-1)
  double upper; ///< x^(alpha-1)
};

/// Bracket for Gamma(x+alpha)/Gamma(x+1); strict for alpha in (0, 1).
inline GautschiBounds gautschi_bounds(double x, double alpha) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("gautschi_bounds: x must be positive");
  detail::require_open_unit(alpha, "gautschi_bounds");
  return {std::pow(x + 1.0, alpha - 1.0), std::pow(x, alpha - 1.0)};
}

/// C_alpha = Gamma(alpha+1) Gamma(1-2 alpha)^(1/2) / Gamma(1-alpha).
/// alpha = 0 gives the limit value 1.
inline double c_alpha_gamma(double alpha) {
  if (!(alpha >= 0.0 && alpha < 0.5))
    throw DomainError("c_alpha_gamma: alpha must lie in [0, 1/2)");
  return std::exp(log_gamma(alpha + 1.0) + 0.5 * log_gamma(1.0 - 2.0 * alpha) -
                  log_gamma(1.0 - alpha));
}

struct SeriesEstimate {
  double value;      ///< C_alpha from the truncated series
  double tail_bound; ///< value <= C_alpha <= value + tail_bound
};

/// C_alpha from Gamma(alpha+1)^2 (1 + sum_{k>=1} binom(k+alpha-1, k)^2),
/// truncated after `terms` terms. The omitted squared tail is bounded via
/// Gautschi by Gamma(alpha+1)^2 Gamma(alpha)^-2 K^(2 alpha-1) / (1-2 alpha).
inline SeriesEstimate c_alpha_series(double alpha, std::size_t terms) {
  detail::require_below_half(alpha, "c_alpha_series");
  if (terms < 1)
    throw DomainError("c_alpha_series: terms must be positive");

  detail::CompensatedSum sum;
  double b = 1.0; // binom(k+alpha-1, k), k = 0
  for (std::size_t k = 1; k <= terms; ++k) {
    const double kd = static_cast<double>(k);
    b *= (kd - 1.0 + alpha) / kd;
    sum.add(b * b);
  }
  const double lead = std::exp(2.0 * log_gamma(alpha + 1.0));
  const double value = std::sqrt(lead * (1.0 + sum.value()));
  const double tail_sq =
      std::exp(2.0 * (log_gamma(alpha + 1.0) - log_gamma(alpha))) *
      std::pow(static_cast<double>(terms), 2.0 * alpha - 1.0) /
      (1.0 - 2.0 * alpha);
  return {value, tail_sq / (2.0 * value)};
}

namespace detail {

template <std::size_t Order>
struct GaussLegendre {
  std::array<double, Order> nodes{};
  std::array<double, Order> weights{};

  GaussLegendre() {
    // Newton iteration on P_Order from the Chebyshev initial guesses.
    for (std::size_t i = 0; i < Order; ++i) {
      double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                          (static_cast<double>(Order) + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (std::size_t j = 2; j <= Order; ++j) {
          const double jd = static_cast<double>(j);
          const double p2 = ((2.0 * jd - 1.0) * x * p1 - (jd - 1.0) * p0) / jd;
          p0 = p1;
          p1 = p2;
        }
        dp = static_cast<double>(Order) * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16)
          break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

inline const GaussLegendre<10>& gauss_legendre_10() {
  static const GaussLegendre<10> rule;
  return rule;
}

} // namespace detail

/// (1/2pi) int_{-pi}^{pi} |1 - e^{i theta}|^{-2 alpha} d theta, which equals
/// Gamma(1-2 alpha)/Gamma(1-alpha)^2.
///
/// The endpoint singularity theta^{-2 alpha} is removed by theta = u^p with
/// p = 1/(1-2 alpha); the transformed integrand p (theta / (2 sin(theta/2)))^{2 alpha}
/// is smooth on [0, pi^(1/p)] and integrated with composite 10-point
/// Gauss-Legendre panels, doubling the panel count until two successive
/// estimates differ by less than `tol`.
inline double morris_integral_quadrature(double alpha, double tol,
                                         std::size_t max_panels = 1u << 20) {
  detail::require_below_half(alpha, "morris_integral_quadrature");
  if (!(tol > 0.0))
    throw DomainError("morris_integral_quadrature: tol must be positive");

  const double p = 1.0 / (1.0 - 2.0 * alpha);
  const double upper = std::pow(std::numbers::pi, 1.0 - 2.0 * alpha);
  const auto& rule = detail::gauss_legendre_10();

  auto integrand = [&](double u) {
    const double theta = std::pow(u, p);
    const double chord = 2.0 * std::sin(0.5 * theta);
    return p * std::pow(theta / chord, 2.0 * alpha);
  };
  auto composite = [&](std::size_t panels) {
    const double h = upper / static_cast<double>(panels);
    detail::CompensatedSum sum;
    for (std::size_t i = 0; i < panels; ++i) {
      const double mid = (static_cast<double>(i) + 0.5) * h;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q)
        sum.add(rule.weights[q] * integrand(mid + 0.5 * h * rule.nodes[q]));
    }
    return 0.5 * h * sum.value() / std::numbers::pi;
  };

  double previous = composite(1);
  for (std::size_t panels = 2; panels <= max_panels; panels *= 2) {
    const double current = composite(panels);
    if (std::abs(current - previous) < tol)
      return current;
    previous = current;
  }
  throw ConvergenceError("morris_integral_quadrature: tolerance not met",
                         previous);
}

/// C_alpha through the Parseval/Morris identity and quadrature.
inline double c_alpha_quadrature(double alpha, double tol) {
  const double integral = morris_integral_quadrature(alpha, tol);
  return std::exp(log_gamma(alpha + 1.0)) * std::sqrt(integral);
}

} // namespace cesaro
