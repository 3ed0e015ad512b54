#pragma once

// Local Dirichlet seminorms at boundary points. With f = a + (z - zeta) g,
// D_zeta(f) = ||g||^2_{H^2}; for zeta = 1 the Taylor coefficients of g are
// the tail sums t_j = sum_{k>j} a_k.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "cesaro/errors.hpp"
#include "cesaro/hadamard.hpp"
#include "cesaro/kernel.hpp"

namespace cesaro {

using Complex = std::complex<double>;

/// Finite Taylor coefficient sequence a_0..a_N.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs)
      : coeffs_(std::move(coeffs)) {}
  Polynomial(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) {}

  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  Complex operator[](std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : Complex{};
  }

  /// Highest index with a nonzero coefficient, -1 for the zero polynomial.
  long degree() const noexcept {
    for (std::size_t k = coeffs_.size(); k-- > 0;)
      if (coeffs_[k] != Complex{}) return static_cast<long>(k);
    return -1;
  }

  bool is_constant() const noexcept { return degree() <= 0; }

private:
  std::vector<Complex> coeffs_;
};

/// t_j = sum_{k>j} a_k for j = 0..N-1 (empty for N = 0).
inline std::vector<Complex> tail_transform(const Polynomial& f) {
  const auto a = f.coeffs();
  if (a.size() < 2) return {};
  std::vector<Complex> t(a.size() - 1);
  Complex acc{};
  for (std::size_t j = t.size(); j-- > 0;) {
    acc += a[j + 1];
    t[j] = acc;
  }
  return t;
}

/// Inverse of tail_transform with a_0 = 0: a_k = t_{k-1} - t_k, t_N = 0.
inline Polynomial from_tails(std::span<const Complex> t) {
  std::vector<Complex> a(t.size() + 1);
  for (std::size_t k = 1; k <= t.size(); ++k)
    a[k] = t[k - 1] - (k < t.size() ? t[k] : Complex{});
  return Polynomial(std::move(a));
}

inline double squared_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

/// D_zeta(f) for |zeta| = 1, reduced to zeta = 1 by a_k -> a_k zeta^k.
inline double local_dirichlet_seminorm(const Polynomial& f,
                                       Complex zeta = {1.0, 0.0}) {
  if (std::abs(std::abs(zeta) - 1.0) > 1e-12)
    throw DomainError("local_dirichlet_seminorm: zeta must be unimodular");
  if (zeta == Complex{1.0, 0.0})
    return squared_norm(tail_transform(f));
  const double theta = std::arg(zeta);
  std::vector<Complex> rotated(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t k = 1; k < rotated.size(); ++k)
    rotated[k] *= std::polar(1.0, static_cast<double>(k) * theta);
  return squared_norm(tail_transform(Polynomial(std::move(rotated))));
}

/// Coefficientwise product, truncated to the shorter operand.
inline Polynomial hadamard_product(const Polynomial& f, const Polynomial& g) {
  const std::size_t m = std::min(f.size(), g.size());
  std::vector<Complex> out(m);
  for (std::size_t k = 0; k < m; ++k) out[k] = f[k] * g[k];
  return Polynomial(std::move(out));
}

/// Polynomial with the kernel weights as coefficients (h_n^alpha).
inline Polynomial kernel_polynomial(const CesaroKernel& kernel) {
  const auto c = kernel.coeffs();
  return Polynomial(std::vector<Complex>(c.begin(), c.end()));
}

inline Polynomial apply(const CesaroKernel& kernel, const Polynomial& f) {
  return Polynomial(apply<Complex>(kernel, f.coeffs()));
}

/// D_1(sigma f) / D_1(f) for non-constant f.
inline double rayleigh_quotient(const CesaroKernel& kernel,
                                const Polynomial& f) {
  if (f.is_constant())
    throw DomainError("rayleigh_quotient: f must be non-constant");
  const double den = local_dirichlet_seminorm(f);
  return local_dirichlet_seminorm(apply(kernel, f)) / den;
}

/// Polynomial whose tail vector is the norm witness, with a_0 = 0.
/// Its Rayleigh quotient equals ||T witness||^2.
inline Polynomial extremal_candidate(const CesaroKernel& kernel,
                                     const NormResult& result) {
  if (result.witness.size() != kernel.degree() + 1)
    throw DimensionError("extremal_candidate: witness has wrong length");
  if (std::all_of(result.witness.begin(), result.witness.end(),
                  [](double v) { return v == 0.0; }))
    throw DomainError("extremal_candidate: zero witness");
  std::vector<Complex> t(result.witness.begin(), result.witness.end());
  return from_tails(t);
}

} // namespace cesaro
