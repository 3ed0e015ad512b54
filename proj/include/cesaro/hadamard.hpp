#pragma once

// Matrix-free realization of the upper-triangular multiplier matrix
//
//        | c_1  c_2-c_1  c_3-c_2  ... |
//   T_c =|  0     c_2    c_3-c_2  ... |
//        |  0      0       c_3    ... |
//
// and its l2 operator norm by power iteration on T^T T.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cesaro/errors.hpp"
#include "cesaro/kernel.hpp"

namespace cesaro {

/// Row-major square matrix, used only for small dense cross-checks.
struct DenseMatrix {
  std::size_t size = 0;
  std::vector<double> data;

  double operator()(std::size_t i, std::size_t j) const {
    return data[i * size + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return data[i * size + j];
  }
};

inline constexpr std::size_t kMaxDenseDimension = 5000;

class MultiplierOperator {
public:
  /// Generic sequence c_1..c_N; off-diagonal entries by subtraction.
  static MultiplierOperator from_coefficients(std::vector<double> c) {
    std::vector<double> d(c.size(), 0.0);
    for (std::size_t j = 1; j < c.size(); ++j)
      d[j] = c[j] - c[j - 1];
    return MultiplierOperator(std::move(c), std::move(d));
  }

  std::size_t dimension() const noexcept { return c_.size(); }
  /// Diagonal entries c_1..c_N (0-based).
  std::span<const double> diagonal() const noexcept { return c_; }
  /// Column offsets: entry (i, j) = offset[j] for i < j; offset[0] = 0.
  std::span<const double> offsets() const noexcept { return d_; }

  MultiplierOperator scaled(double s) const {
    std::vector<double> c = c_, d = d_;
    for (auto& v : c) v *= s;
    for (auto& v : d) v *= s;
    return MultiplierOperator(std::move(c), std::move(d));
  }

private:
  MultiplierOperator(std::vector<double> c, std::vector<double> d)
      : c_(std::move(c)), d_(std::move(d)) {}

  friend MultiplierOperator from_kernel(const CesaroKernel& kernel);

  std::vector<double> c_;
  std::vector<double> d_;
};

/// T for sigma_n^alpha: c_1..c_n followed by c_{n+1} = 0, dimension n+1.
inline MultiplierOperator from_kernel(const CesaroKernel& kernel) {
  const std::size_t n = kernel.degree();
  std::vector<double> c(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k)
    c[k - 1] = kernel[k];
  const std::vector<double> fwd = forward_differences(kernel);
  std::vector<double> d(n + 1, 0.0);
  for (std::size_t j = 1; j <= n; ++j)
    d[j] = fwd[j - 1];
  return MultiplierOperator(std::move(c), std::move(d));
}

namespace detail {

inline void check_length(const MultiplierOperator& op, std::size_t len,
                         const char* what) {
  if (len != op.dimension())
    throw DimensionError(std::string(what) + ": expected length " +
                         std::to_string(op.dimension()) + ", got " +
                         std::to_string(len));
}

} // namespace detail

/// y = T x in O(N): y_i = c_i x_i + sum_{j>i} (c_j - c_{j-1}) x_j.
template <class Scalar>
void matvec(const MultiplierOperator& op, std::span<const Scalar> x,
            std::span<Scalar> y) {
  detail::check_length(op, x.size(), "matvec");
  detail::check_length(op, y.size(), "matvec");
  const auto c = op.diagonal();
  const auto d = op.offsets();
  Scalar suffix{};
  for (std::size_t i = x.size(); i-- > 0;) {
    const Scalar xi = x[i];
    y[i] = c[i] * xi + suffix;
    suffix += d[i] * xi;
  }
}

template <class Scalar>
std::vector<Scalar> matvec(const MultiplierOperator& op,
                           std::span<const Scalar> x) {
  std::vector<Scalar> y(x.size());
  matvec<Scalar>(op, x, std::span<Scalar>(y));
  return y;
}

template <class Scalar>
std::vector<Scalar> matvec(const MultiplierOperator& op,
                           const std::vector<Scalar>& x) {
  return matvec(op, std::span<const Scalar>(x));
}

/// y = T^T x in O(N): y_j = c_j x_j + (c_j - c_{j-1}) sum_{i<j} x_i.
/// T is real, so this is also the Hilbert-space adjoint on complex input.
template <class Scalar>
void matvec_adjoint(const MultiplierOperator& op, std::span<const Scalar> x,
                    std::span<Scalar> y) {
  detail::check_length(op, x.size(), "matvec_adjoint");
  detail::check_length(op, y.size(), "matvec_adjoint");
  const auto c = op.diagonal();
  const auto d = op.offsets();
  Scalar prefix{};
  for (std::size_t j = 0; j < x.size(); ++j) {
    const Scalar xj = x[j];
    y[j] = c[j] * xj + d[j] * prefix;
    prefix += xj;
  }
}

template <class Scalar>
std::vector<Scalar> matvec_adjoint(const MultiplierOperator& op,
                                   std::span<const Scalar> x) {
  std::vector<Scalar> y(x.size());
  matvec_adjoint<Scalar>(op, x, std::span<Scalar>(y));
  return y;
}

template <class Scalar>
std::vector<Scalar> matvec_adjoint(const MultiplierOperator& op,
                                   const std::vector<Scalar>& x) {
  return matvec_adjoint(op, std::span<const Scalar>(x));
}

inline DenseMatrix dense(const MultiplierOperator& op) {
  const std::size_t n = op.dimension();
  if (n > kMaxDenseDimension)
    throw ResourceError("dense: dimension " + std::to_string(n) +
                        " exceeds " + std::to_string(kMaxDenseDimension));
  DenseMatrix m{n, std::vector<double>(n * n, 0.0)};
  const auto c = op.diagonal();
  const auto d = op.offsets();
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = c[i];
    for (std::size_t j = i + 1; j < n; ++j)
      m(i, j) = d[j];
  }
  return m;
}

struct NormResult {
  double norm = 0.0;
  double norm_sq = 0.0;
  std::size_t iterations = 0;
  double residual = 0.0; ///< relative Rayleigh-quotient change at exit
  bool converged = false;
  std::vector<double> witness; ///< unit vector with ||T witness|| = norm
};

/// Thrown when max_iter is reached first. `partial()` still holds a valid
/// lower bound through its witness.
class NormConvergenceError : public ConvergenceError {
public:
  NormConvergenceError(const std::string& what, NormResult partial)
      : ConvergenceError(what, partial.norm), partial_(std::move(partial)) {}

  const NormResult& partial() const noexcept { return partial_; }

private:
  NormResult partial_;
};

namespace detail {

inline double normalize(std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  const double nrm = std::sqrt(s);
  if (nrm > 0.0)
    for (auto& v : x) v /= nrm;
  return nrm;
}

// Power iteration on T^T T from a fixed start. The Rayleigh quotient
// ||T x||^2 of the unit iterate never decreases.
inline NormResult power_iterate(const MultiplierOperator& op,
                                std::vector<double> x, double tol,
                                std::size_t max_iter) {
  const std::size_t n = op.dimension();
  std::vector<double> y(n), z(n);
  NormResult r;
  normalize(x);
  double rq_old = 0.0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    matvec<double>(op, x, y);
    double rq = 0.0;
    for (double v : y) rq += v * v;
    r.iterations = it;
    r.residual = rq > 0.0 ? std::abs(rq - rq_old) / rq : 0.0;
    r.norm_sq = rq;
    if (rq == 0.0 || (it > 1 && r.residual < tol)) {
      r.converged = true;
      break;
    }
    matvec_adjoint<double>(op, y, z);
    std::swap(x, z);
    if (normalize(x) == 0.0) {
      r.converged = true;
      break;
    }
    rq_old = rq;
  }
  // Out of iterations: x has advanced past the last measured iterate.
  if (!r.converged) {
    matvec<double>(op, x, y);
    double rq = 0.0;
    for (double v : y) rq += v * v;
    r.norm_sq = rq;
  }
  r.norm = std::sqrt(r.norm_sq);
  r.witness = std::move(x);
  return r;
}

} // namespace detail

/// ||T||_{l2 -> l2} by power iteration on x -> T^T (T x).
///
/// Two deterministic starts are run and the larger result kept: the ramp
/// x_i = i/N, and e_1, whose Rayleigh quotient is already c_1^2. Iteration
/// stops when the Rayleigh quotient changes by less than `tol` relative.
inline NormResult operator_norm(const MultiplierOperator& op, double tol,
                                std::size_t max_iter) {
  if (!(tol > 0.0))
    throw DomainError("operator_norm: tol must be positive");
  if (max_iter < 1)
    throw DomainError("operator_norm: max_iter must be positive");
  const std::size_t n = op.dimension();
  const auto c = op.diagonal();
  const bool zero_op = std::all_of(c.begin(), c.end(),
                                   [](double v) { return v == 0.0; }) &&
                       std::all_of(op.offsets().begin(), op.offsets().end(),
                                   [](double v) { return v == 0.0; });
  if (n == 0 || zero_op) {
    NormResult r;
    r.converged = true;
    r.witness.assign(n, 0.0);
    if (n > 0) r.witness[0] = 1.0;
    return r;
  }

  std::vector<double> ramp(n);
  for (std::size_t i = 0; i < n; ++i)
    ramp[i] = static_cast<double>(i + 1) / static_cast<double>(n);
  std::vector<double> unit(n, 0.0);
  unit[0] = 1.0;

  NormResult best = detail::power_iterate(op, std::move(ramp), tol, max_iter);
  NormResult other = detail::power_iterate(op, std::move(unit), tol, max_iter);
  const std::size_t total = best.iterations + other.iterations;
  if (other.norm_sq > best.norm_sq)
    best = std::move(other);
  best.iterations = total;
  if (!best.converged)
    throw NormConvergenceError("operator_norm: max_iter reached with residual " +
                                   std::to_string(best.residual),
                               std::move(best));
  return best;
}

/// ||T v_k - c_k v_k||_inf with v_k = e_1 + ... + e_k.
inline double eigen_check(const MultiplierOperator& op, std::size_t k) {
  if (k < 1 || k > op.dimension())
    throw DomainError("eigen_check: k must lie in 1..N");
  std::vector<double> v(op.dimension(), 0.0);
  std::fill(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), 1.0);
  const std::vector<double> tv = matvec(op, v);
  const double ck = op.diagonal()[k - 1];
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    worst = std::max(worst, std::abs(tv[i] - ck * v[i]));
  return worst;
}

/// max_k |c_k|, a lower bound for ||T|| since every c_k is an eigenvalue.
inline double coeff_lower_bound(const MultiplierOperator& op) {
  double m = 0.0;
  for (double v : op.diagonal()) m = std::max(m, std::abs(v));
  return m;
}

} // namespace cesaro
