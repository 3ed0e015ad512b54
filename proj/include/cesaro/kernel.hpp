#pragma once

// Generalized Cesaro weights c_k = binom(n+alpha, alpha)^-1 binom(n-k+alpha, alpha)
// and their action on Taylor coefficient sequences.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cesaro/errors.hpp"
#include "cesaro/specfun.hpp"

namespace cesaro {

/// Largest degree accepted anywhere in the library.
inline constexpr std::size_t kMaxDegree = std::size_t{1} << 24;

/// Weights c_0..c_n of sigma_n^alpha. Immutable once built.
class CesaroKernel {
public:
  CesaroKernel(std::size_t n, double alpha, std::vector<double> coeffs)
      : n_(n), alpha_(alpha), coeffs_(std::move(coeffs)) {}

  std::size_t degree() const noexcept { return n_; }
  double alpha() const noexcept { return alpha_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  double operator[](std::size_t k) const { return coeffs_[k]; }

private:
  std::size_t n_;
  double alpha_;
  std::vector<double> coeffs_;
};

namespace detail {

inline void check_kernel_args(std::size_t n, double alpha, const char* what) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw DomainError(std::string(what) + ": alpha must lie in [0, 1], got " +
                      std::to_string(alpha));
  if (n > kMaxDegree)
    throw ResourceError(std::string(what) + ": degree " + std::to_string(n) +
                        " exceeds the supported maximum " +
                        std::to_string(kMaxDegree));
}

} // namespace detail

/// Builds the kernel from c_0 = 1 and c_{k+1} = c_k (n-k)/(n-k+alpha).
/// alpha = 0 and alpha = 1 are filled with their exact values.
inline CesaroKernel coefficients(std::size_t n, double alpha) {
  detail::check_kernel_args(n, alpha, "coefficients");
  std::vector<double> c(n + 1);
  const double nd = static_cast<double>(n);
  if (alpha == 0.0) {
    std::fill(c.begin(), c.end(), 1.0);
  } else if (alpha == 1.0) {
    for (std::size_t k = 0; k <= n; ++k)
      c[k] = (nd + 1.0 - static_cast<double>(k)) / (nd + 1.0);
  } else {
    c[0] = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double rest = nd - static_cast<double>(k);
      c[k + 1] = c[k] * (rest / (rest + alpha));
    }
  }
  return {n, alpha, std::move(c)};
}

/// Direct log-space evaluation of every c_k through generalized binomials.
/// Independent of the recurrence in `coefficients`.
inline CesaroKernel coefficients_gamma(std::size_t n, double alpha) {
  detail::check_kernel_args(n, alpha, "coefficients_gamma");
  const double nd = static_cast<double>(n);
  const double log_norm = log_gen_binom(nd + alpha, alpha);
  std::vector<double> c(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    c[k] = std::exp(
        log_gen_binom(nd - static_cast<double>(k) + alpha, alpha) - log_norm);
  return {n, alpha, std::move(c)};
}

/// Forward differences d_k = c_{k+1} - c_k for k = 1..n (index k-1 in the
/// result), with c_{n+1} = 0. Uses d_k = -alpha c_{k+1}/(n-k) for k < n,
/// which avoids cancellation between neighbouring weights.
inline std::vector<double> forward_differences(const CesaroKernel& kernel) {
  const std::size_t n = kernel.degree();
  const double alpha = kernel.alpha();
  std::vector<double> d(n);
  for (std::size_t k = 1; k < n; ++k) {
    if (alpha == 1.0)
      d[k - 1] = -1.0 / (static_cast<double>(n) + 1.0);
    else
      d[k - 1] = -alpha * kernel[k + 1] / static_cast<double>(n - k);
  }
  if (n >= 1)
    d[n - 1] = -kernel[n];
  return d;
}

/// sigma_n^alpha on Taylor coefficients: (c_k a_k) for k = 0..n.
/// Entries past the input length are zero; input past index n is dropped.
template <class Scalar>
std::vector<Scalar> apply(const CesaroKernel& kernel,
                          std::span<const Scalar> taylor) {
  std::vector<Scalar> out(kernel.degree() + 1, Scalar{});
  const std::size_t m = std::min(out.size(), taylor.size());
  for (std::size_t k = 0; k < m; ++k)
    out[k] = kernel[k] * taylor[k];
  return out;
}

template <class Scalar>
std::vector<Scalar> apply(const CesaroKernel& kernel,
                          const std::vector<Scalar>& taylor) {
  return apply(kernel, std::span<const Scalar>(taylor));
}

struct SquaredTailBracket {
  double lower;
  double upper;
};

/// Bracket for c_n^2:
/// Gamma(a+1)^2 n^(2-2a)/(n+a)^2 < c_n^2 < Gamma(a+1)^2 (n+1)^(2-2a)/(n+a)^2.
inline SquaredTailBracket tail_asymptotic_cn(std::size_t n, double alpha) {
  if (n < 1)
    throw DomainError("tail_asymptotic_cn: n must be at least 1");
  detail::require_open_unit(alpha, "tail_asymptotic_cn");
  const double nd = static_cast<double>(n);
  const double log_lead =
      2.0 * log_gamma(alpha + 1.0) - 2.0 * std::log(nd + alpha);
  return {std::exp(log_lead + (2.0 - 2.0 * alpha) * std::log(nd)),
          std::exp(log_lead + (2.0 - 2.0 * alpha) * std::log(nd + 1.0))};
}

} // namespace cesaro
