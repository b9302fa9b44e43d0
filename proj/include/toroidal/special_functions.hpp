#pragma once

// Complete elliptic integrals, Gamma at half-integers, and the Legendre
// functions Q^m_{n-1/2}(t), t > 1, that carry the radial dependence of
// toroidal harmonics.
//
// Normalization: Q^m_nu(t) = (t^2 - 1)^{m/2} d^m/dt^m Q_nu(t), equivalently
//   Q^m_nu(t) = (-1)^m Gamma(nu+m+1) / (2^{nu+1} Gamma(nu+1)) (t^2-1)^{m/2}
//               * integral_{-1}^{1} (1-s^2)^nu (t-s)^{-nu-m-1} ds.
// Q^m has the sign (-1)^m.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <vector>

#include "toroidal/errors.hpp"
#include "toroidal/quadrature.hpp"
#include "toroidal/rational.hpp"

namespace toroidal {

template <std::floating_point Real>
struct EllipticPair {
  Real K;
  Real E;
};

// K and E from the complementary modulus k' = sqrt(1 - k^2) by the
// arithmetic-geometric mean. Taking k' as input avoids cancellation when
// k is close to 1.
template <std::floating_point Real>
EllipticPair<Real> elliptic_from_complement(Real kp) {
  if (!(kp > 0 && kp <= 1)) throw DomainError("elliptic_from_complement: need 0 < k' <= 1");
  Real a = 1;
  Real b = kp;
  Real sum = (1 - kp) * (1 + kp) / 2;
  Real weight = 1;
  for (int i = 0; i < 64; ++i) {
    const Real c = (a - b) / 2;
    const Real next = (a + b) / 2;
    b = std::sqrt(a * b);
    a = next;
    sum += weight * c * c;
    weight *= 2;
    if (std::abs(c) <= std::numeric_limits<Real>::epsilon() * a) break;
  }
  const Real K = std::numbers::pi_v<Real> / (2 * a);
  return {K, K * (1 - sum)};
}

template <std::floating_point Real>
Real elliptic_K(Real k) {
  if (!(k >= 0 && k < 1)) throw DomainError("elliptic_K: modulus must lie in [0, 1)");
  return elliptic_from_complement(std::sqrt((1 - k) * (1 + k))).K;
}

template <std::floating_point Real>
Real elliptic_E(Real k) {
  if (!(k >= 0 && k <= 1)) throw DomainError("elliptic_E: modulus must lie in [0, 1]");
  if (k == 1) return 1;
  return elliptic_from_complement(std::sqrt((1 - k) * (1 + k))).E;
}

// Gamma(k + 1/2) for k >= 0.
template <std::floating_point Real>
Real gamma_half(int k) {
  if (k < 0) throw DomainError("gamma_half: k must be non-negative");
  Real g = std::sqrt(std::numbers::pi_v<Real>);
  for (int j = 1; j <= k; ++j) g *= j - Real(0.5);
  return g;
}

// Gamma(n + m + 1/2) / Gamma(n - m + 1/2) for any integers n, m, as the
// telescoped product of (2j + 1)/2. Never zero: every factor is odd/2.
inline Rational gamma_half_ratio_exact(int n, int m) {
  Rational r = 1;
  if (m >= 0) {
    for (int j = n - m; j <= n + m - 1; ++j) r *= make_rational(2 * j + 1, 2);
  } else {
    for (int j = n + m; j <= n - m - 1; ++j) r /= make_rational(2 * j + 1, 2);
  }
  return r;
}

template <std::floating_point Real>
Real gamma_half_ratio(int n, int m) {
  return to_real<Real>(gamma_half_ratio_exact(n, m));
}

// Q^m_nu(t) by adaptive quadrature of the defining integral, after the
// substitution s = cos(u) which removes the endpoint behaviour of
// (1 - s^2)^nu. Any real degree nu > -1.
template <std::floating_point Real>
Real legendre_q_integral(Real nu, int m, Real t, Real tol = Real(1e-13)) {
  if (!(t > 1)) throw DomainError("legendre_q_integral: t must exceed 1");
  if (!(nu > -1)) throw DomainError("legendre_q_integral: degree must exceed -1");
  if (m < 0) throw DomainError("legendre_q_integral: order must be non-negative");
  constexpr Real pi = std::numbers::pi_v<Real>;
  auto integrand = [nu, m, t](Real u) {
    return std::pow(std::sin(u), 2 * nu + 1) * std::pow(t - std::cos(u), -(nu + m + 1));
  };
  QuadratureOptions options;
  options.mode = ToleranceMode::relative;
  const Real integral = integrate_1d(integrand, Real(0), pi, tol, options).value;
  const Real s = std::sqrt((t - 1) * (t + 1));
  const Real sign = (m % 2 == 0) ? Real(1) : Real(-1);
  const Real prefactor = sign * std::exp(std::lgamma(nu + m + 1) - std::lgamma(nu + 1)) *
                         std::pow(Real(2), -(nu + 1)) * std::pow(s, Real(m));
  return prefactor * integral;
}

// Q^m_{n-1/2}(t) by quadrature; the slow reference path.
template <std::floating_point Real>
Real legendre_q_quadrature(int n, int m, Real t, Real tol = Real(1e-13)) {
  if (n < 0) throw DomainError("legendre_q_quadrature: degree index must be non-negative");
  return legendre_q_integral(n - Real(0.5), m, t, tol);
}

// Table of Q^m_{n-1/2}(t) for 0 <= n <= n_max, 0 <= m <= m_max.
//
// Degree -1/2 seeds come from complete elliptic integrals and are raised
// in order by the three-term order recurrence. Each order is then filled
// in degree by backward (Miller) recurrence normalized to its seed: Q is
// the recessive solution in increasing degree, so forward recurrence
// would lose about exp(2 n eta) relative accuracy.
//
// The derivative recurrence (1-t^2) d/dt Q^m_{nu+1} = (nu+m+1) Q^m_nu -
// (nu+1) t Q^m_{nu+1}, with the derivative written through Q^{m+1}, is
// independent of how the degree direction was filled and serves as the
// residual monitor. Above the threshold every entry is recomputed by
// quadrature and used_fallback() is set.
template <std::floating_point Real = double>
class LegendreQTable {
 public:
  LegendreQTable(Real t, int n_max, int m_max, Real monitor_threshold = Real(1e-10))
      : t_(t), n_max_(n_max), m_max_(m_max) {
    if (!(t > 1)) throw DomainError("LegendreQTable: t must exceed 1");
    if (n_max < 0 || m_max < 0) throw DomainError("LegendreQTable: sizes must be non-negative");
    s_ = std::sqrt((t - 1) * (t + 1));
    rows_ = m_max_ + 2;
    cols_ = n_max_ + 2;
    values_.assign(static_cast<std::size_t>(rows_) * cols_, Real(0));
    fill();
    monitor_ = derivative_residual();
    if (!(monitor_ <= monitor_threshold)) {
      for (int m = 0; m < rows_; ++m) {
        for (int n = 0; n < cols_; ++n) at(n, m) = legendre_q_quadrature(n, m, t_);
      }
      fallback_ = true;
      monitor_ = derivative_residual();
    }
  }

  Real t() const { return t_; }
  int n_max() const { return n_max_; }
  int m_max() const { return m_max_; }
  Real operator()(int n, int m) const {
    if (n < 0 || n > n_max_ + 1 || m < 0 || m > m_max_ + 1) throw DomainError("LegendreQTable: index out of range");
    return values_[static_cast<std::size_t>(m) * cols_ + n];
  }
  // d/dt Q^m_{n-1/2}(t) = m t Q^m / (t^2 - 1) + Q^{m+1} / sqrt(t^2 - 1).
  Real derivative(int n, int m) const {
    return m * t_ * (*this)(n, m) / (s_ * s_) + (*this)(n, m + 1) / s_;
  }
  // Largest relative residual of the derivative recurrence.
  Real monitor_residual() const { return monitor_; }
  bool used_fallback() const { return fallback_; }

  // Relative residual of (n-m+1/2) Q_{n+1} = 2n t Q_n - (n+m-1/2) Q_{n-1}.
  Real degree_residual(int n, int m) const {
    const Real lhs = (n - m + Real(0.5)) * (*this)(n + 1, m);
    const Real a = 2 * n * t_ * (*this)(n, m);
    const Real b = (n + m - Real(0.5)) * (*this)(n - 1, m);
    return std::abs(lhs - a + b) / std::max({std::abs(lhs), std::abs(a), std::abs(b)});
  }
  // Relative residual of the derivative recurrence at degree n - 1/2.
  Real derivative_residual(int n, int m) const {
    const Real lhs = -s_ * s_ * derivative(n + 1, m);
    const Real a = (n + m + Real(0.5)) * (*this)(n, m);
    const Real b = (n + Real(0.5)) * t_ * (*this)(n + 1, m);
    return std::abs(lhs - a + b) / std::max({std::abs(lhs), std::abs(a), std::abs(b)});
  }

 private:
  Real& at(int n, int m) { return values_[static_cast<std::size_t>(m) * cols_ + n]; }

  void fill() {
    const Real kp = std::sqrt((t_ - 1) / (t_ + 1));
    const Real k = std::sqrt(2 / (t_ + 1));
    const auto [K, E] = elliptic_from_complement(kp);
    const Real q0 = k * K;
    const Real q1 = t_ * k * K - std::sqrt(2 * (t_ + 1)) * E;
    // Order seeds at degree -1/2.
    std::vector<Real> seed(rows_ + 1);
    seed[0] = q0;
    seed[1] = (q1 - t_ * q0) / (2 * s_);
    for (int m = 0; m + 2 < static_cast<int>(seed.size()); ++m) {
      const Real h = m + Real(0.5);
      seed[m + 2] = -2 * (m + 1) * (t_ / s_) * seed[m + 1] - h * h * seed[m];
    }
    const Real eta = std::acosh(t_);
    const Real digits = -std::log(std::numeric_limits<Real>::epsilon());
    for (int m = 0; m < rows_; ++m) {
      const double extra = std::ceil(static_cast<double>(digits / (2 * eta))) + 10 + m;
      if (extra > 200000) throw DomainError("LegendreQTable: t too close to 1 for backward recurrence");
      const int top = cols_ - 1;
      const int start = top + static_cast<int>(extra);
      Real above = 0;
      Real current = 1;
      for (int n = start; n >= 1; --n) {
        if (n <= top) at(n, m) = current;
        // (n-m+1/2) Q_{n+1} = 2n t Q_n - (n+m-1/2) Q_{n-1}, solved for Q_{n-1}.
        const Real below = (2 * n * t_ * current - (n - m + Real(0.5)) * above) / (n + m - Real(0.5));
        above = current;
        current = below;
        if (std::abs(current) > Real(1e200)) {
          const Real shrink = Real(1e-200);
          current *= shrink;
          above *= shrink;
          for (int j = std::max(n - 1, 1); j <= top; ++j) at(j, m) *= shrink;
        }
      }
      at(0, m) = current;
      const Real scale = seed[m] / current;
      for (int n = 0; n <= top; ++n) at(n, m) *= scale;
    }
  }

  Real derivative_residual() const {
    Real worst = 0;
    for (int m = 0; m <= m_max_; ++m) {
      for (int n = 0; n <= n_max_; ++n) worst = std::max(worst, derivative_residual(n, m));
    }
    return worst;
  }

  Real t_;
  Real s_ = 0;
  int n_max_;
  int m_max_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Real> values_;
  Real monitor_ = 0;
  bool fallback_ = false;
};

// Single value Q^m_{n-1/2}(t) through the table path.
template <std::floating_point Real>
Real legendre_q_half(int n, int m, Real t) {
  if (n < 0 || m < 0) throw DomainError("legendre_q_half: indices must be non-negative");
  return LegendreQTable<Real>(t, n, m)(n, m);
}

}  // namespace toroidal
