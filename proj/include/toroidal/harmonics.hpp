#pragma once

// Interior toroidal harmonics
//   I^{nu,mu}_{n,m} = sqrt(cosh eta - cos theta) Q^m_{n-1/2}(cosh eta)
//                     Phi^nu_n(theta) Phi^mu_m(phi),
// with Phi^+_k = cos(k .) and Phi^-_k = sin(k .), the planar families
// J^{+-}_m = Re/Im (x1 + i x2)^m and Jhat = -log|x1 + i x2|, and exact
// coefficient tables for the partial derivatives of I.

#include <cmath>
#include <compare>
#include <complex>
#include <concepts>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "toroidal/errors.hpp"
#include "toroidal/geometry.hpp"
#include "toroidal/quadrature.hpp"
#include "toroidal/rational.hpp"
#include "toroidal/special_functions.hpp"

namespace toroidal {

enum class Sign : int { minus = -1, plus = 1 };

constexpr int sign_value(Sign s) { return static_cast<int>(s); }
constexpr Sign flip(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
constexpr Sign operator*(Sign a, Sign b) { return sign_value(a) == sign_value(b) ? Sign::plus : Sign::minus; }
constexpr char sign_symbol(Sign s) { return s == Sign::plus ? '+' : '-'; }

inline Sign parse_sign(const std::string& text) {
  if (text == "+" || text == "plus" || text == "1" || text == "+1") return Sign::plus;
  if (text == "-" || text == "minus" || text == "-1") return Sign::minus;
  throw DomainError("unrecognized sign '" + text + "'");
}

// (n, m, nu, mu). Phi^-_0 vanishes identically, so (n, nu) = (0, -) and
// (m, mu) = (0, -) name the zero function and are rejected.
struct HarmonicIndex {
  int n = 0;
  int m = 0;
  Sign nu = Sign::plus;
  Sign mu = Sign::plus;

  HarmonicIndex() = default;
  HarmonicIndex(int n_in, int m_in, Sign nu_in, Sign mu_in) : n(n_in), m(m_in), nu(nu_in), mu(mu_in) {
    if (!is_valid(n, m, nu, mu)) throw DomainError("HarmonicIndex: excluded index " + str());
  }

  static bool is_valid(int n, int m, Sign nu, Sign mu) {
    return n >= 0 && m >= 0 && !(n == 0 && nu == Sign::minus) && !(m == 0 && mu == Sign::minus);
  }

  std::string str() const {
    std::ostringstream out;
    out << "(" << n << "," << m << "," << sign_symbol(nu) << "," << sign_symbol(mu) << ")";
    return out.str();
  }

  auto operator<=>(const HarmonicIndex&) const = default;
};

inline std::ostream& operator<<(std::ostream& out, const HarmonicIndex& idx) { return out << idx.str(); }

struct DerivativeTerm {
  HarmonicIndex index;
  Rational coefficient;
};

// Exact finite linear combination of harmonics.
using HarmonicCombination = std::map<HarmonicIndex, Rational>;

// kappa^n_{k,m}: d/dx0 I^{+,mu}_{n,m} = sum_k kappa^n_{k,m} I^{-,mu}_{k,m}.
inline Rational kappa(int k, int n, int m) {
  if (k == n - 1) return make_rational(-(2 * n + 2 * m - 1), 4);
  if (k == n) return make_rational(n);
  if (k == n + 1) return make_rational(-(2 * n - 2 * m + 1) * (n == 0 ? 2 : 1), 4);
  return Rational(0);
}

namespace detail {

inline void add_term(std::vector<DerivativeTerm>& out, int k, int m, Sign nu, Sign mu, const Rational& c) {
  if (c == 0 || !HarmonicIndex::is_valid(k, m, nu, mu)) return;
  for (auto& term : out) {
    if (term.index == HarmonicIndex(k, m, nu, mu)) {
      term.coefficient += c;
      return;
    }
  }
  out.push_back({HarmonicIndex(k, m, nu, mu), c});
}

inline void sort_terms(std::vector<DerivativeTerm>& terms) {
  std::erase_if(terms, [](const DerivativeTerm& t) { return t.coefficient == 0; });
  std::sort(terms.begin(), terms.end(),
            [](const DerivativeTerm& a, const DerivativeTerm& b) { return a.index < b.index; });
}

// Coefficients of d/dx1 I_{n,m} on I_{k,m-1} (lowering) and I_{k,m+1}
// (raising), k = n-1, n, n+1. The factor 2 at n = 0 (and at m = 0 for
// raising) comes from cos(0) = 1 having no partner in the product
// formulas for cos(a)cos(b).
inline Rational lowering(int k, int n, int m) {
  if (m == 0) return 0;
  if (k == n - 1) return make_rational(-(2 * n + 2 * m - 3) * (2 * n + 2 * m - 1), 16);
  if (k == n) return make_rational((2 * n + 2 * m - 1) * (2 * n - 2 * m + 1), 8);
  if (k == n + 1) return make_rational(-(2 * n - 2 * m + 1) * (2 * n - 2 * m + 3) * (n == 0 ? 2 : 1), 16);
  return 0;
}

inline Rational raising(int k, int n, int m) {
  const int twice = m == 0 ? 2 : 1;
  if (k == n - 1) return make_rational(-twice, 4);
  if (k == n) return make_rational(twice, 2);
  if (k == n + 1) return make_rational(-twice * (n == 0 ? 2 : 1), 4);
  return 0;
}

}  // namespace detail

// d/dx0 I^{nu,mu}_{n,m} = nu * sum_k kappa^n_{k,m} I^{-nu,mu}_{k,m}.
inline std::vector<DerivativeTerm> d0_terms(const HarmonicIndex& idx) {
  std::vector<DerivativeTerm> out;
  for (int k = idx.n - 1; k <= idx.n + 1; ++k) {
    detail::add_term(out, k, idx.m, flip(idx.nu), idx.mu, sign_value(idx.nu) * kappa(k, idx.n, idx.m));
  }
  detail::sort_terms(out);
  return out;
}

inline std::vector<DerivativeTerm> d1_terms(const HarmonicIndex& idx) {
  std::vector<DerivativeTerm> out;
  for (int k = idx.n - 1; k <= idx.n + 1; ++k) {
    detail::add_term(out, k, idx.m - 1, idx.nu, idx.mu, detail::lowering(k, idx.n, idx.m));
    detail::add_term(out, k, idx.m + 1, idx.nu, idx.mu, detail::raising(k, idx.n, idx.m));
  }
  detail::sort_terms(out);
  return out;
}

// d/dx2 I^{nu,mu}_{n,m} = mu * (raising - lowering), landing on -mu.
inline std::vector<DerivativeTerm> d2_terms(const HarmonicIndex& idx) {
  std::vector<DerivativeTerm> out;
  const int s = sign_value(idx.mu);
  const Sign target = flip(idx.mu);
  for (int k = idx.n - 1; k <= idx.n + 1; ++k) {
    detail::add_term(out, k, idx.m - 1, idx.nu, target, -s * detail::lowering(k, idx.n, idx.m));
    detail::add_term(out, k, idx.m + 1, idx.nu, target, s * detail::raising(k, idx.n, idx.m));
  }
  detail::sort_terms(out);
  return out;
}

enum class Axis { x0 = 0, x1 = 1, x2 = 2 };

inline std::vector<DerivativeTerm> derivative_terms(Axis axis, const HarmonicIndex& idx) {
  switch (axis) {
    case Axis::x0:
      return d0_terms(idx);
    case Axis::x1:
      return d1_terms(idx);
    case Axis::x2:
      return d2_terms(idx);
  }
  return {};
}

inline HarmonicCombination differentiate(Axis axis, const HarmonicCombination& combination) {
  HarmonicCombination out;
  for (const auto& [idx, c] : combination) {
    for (const auto& term : derivative_terms(axis, idx)) out[term.index] += c * term.coefficient;
  }
  std::erase_if(out, [](const auto& entry) { return entry.second == 0; });
  return out;
}

// Floating-point copy of a combination, ready for repeated evaluation.
template <std::floating_point Real = double>
struct LinearForm {
  std::vector<std::pair<HarmonicIndex, Real>> terms;
  int n_max = 0;
  int m_max = 0;

  LinearForm() = default;
  explicit LinearForm(const HarmonicCombination& combination) {
    for (const auto& [idx, c] : combination) {
      terms.emplace_back(idx, to_real<Real>(c));
      n_max = std::max(n_max, idx.n);
      m_max = std::max(m_max, idx.m);
    }
  }
};

// All harmonics up to (n_max, m_max) at one point; the Legendre table and
// trigonometric factors are computed once.
template <std::floating_point Real = double>
class HarmonicEvaluator {
 public:
  HarmonicEvaluator(const ToroidalPoint<Real>& p, int n_max, int m_max)
      : n_max_(n_max), m_max_(m_max), table_(std::cosh(p.eta), std::max(n_max, 0), std::max(m_max, 0)) {
    // cosh(eta) - cos(theta) without cancellation.
    const Real a = std::sinh(p.eta / 2);
    const Real b = std::sin(p.theta / 2);
    root_ = std::sqrt(2 * (a * a + b * b));
    for (int n = 0; n <= n_max_; ++n) {
      cos_theta_.push_back(std::cos(n * p.theta));
      sin_theta_.push_back(std::sin(n * p.theta));
    }
    for (int m = 0; m <= m_max_; ++m) {
      cos_phi_.push_back(std::cos(m * p.phi));
      sin_phi_.push_back(std::sin(m * p.phi));
    }
  }
  HarmonicEvaluator(const CartesianPoint<Real>& x, int n_max, int m_max)
      : HarmonicEvaluator(to_toroidal(x), n_max, m_max) {}

  int n_max() const { return n_max_; }
  int m_max() const { return m_max_; }

  Real operator()(const HarmonicIndex& idx) const {
    if (idx.n > n_max_ || idx.m > m_max_) throw DomainError("HarmonicEvaluator: index beyond table " + idx.str());
    const Real angular_theta = idx.nu == Sign::plus ? cos_theta_[idx.n] : sin_theta_[idx.n];
    const Real angular_phi = idx.mu == Sign::plus ? cos_phi_[idx.m] : sin_phi_[idx.m];
    return root_ * table_(idx.n, idx.m) * angular_theta * angular_phi;
  }

  Real operator()(const LinearForm<Real>& form) const {
    Real sum = 0;
    for (const auto& [idx, c] : form.terms) sum += c * (*this)(idx);
    return sum;
  }

  const LegendreQTable<Real>& table() const { return table_; }

 private:
  int n_max_;
  int m_max_;
  LegendreQTable<Real> table_;
  Real root_ = 0;
  std::vector<Real> cos_theta_, sin_theta_, cos_phi_, sin_phi_;
};

template <std::floating_point Real>
Real eval_I(const HarmonicIndex& idx, const ToroidalPoint<Real>& p) {
  return HarmonicEvaluator<Real>(p, idx.n, idx.m)(idx);
}

template <std::floating_point Real>
Real eval_I(const HarmonicIndex& idx, const CartesianPoint<Real>& x) {
  return eval_I(idx, to_toroidal(x));
}

// Exact combination evaluated at one point.
template <std::floating_point Real>
Real eval_combination(const HarmonicCombination& combination, const CartesianPoint<Real>& x) {
  const LinearForm<Real> form(combination);
  return HarmonicEvaluator<Real>(x, form.n_max, form.m_max)(form);
}

// J^+_m = Re (x1 + i x2)^m, J^-_m = Im (x1 + i x2)^m, any integer m.
template <std::floating_point Real>
Real eval_J(int m, Sign sign, const CartesianPoint<Real>& x) {
  const std::complex<Real> z(x.x1, x.x2);
  if (m < 0 && z == std::complex<Real>(0)) throw DomainError("eval_J: negative power on the axis");
  std::complex<Real> w(1);
  const std::complex<Real> base = m >= 0 ? z : std::complex<Real>(1) / z;
  for (int i = 0; i < std::abs(m); ++i) w *= base;
  return sign == Sign::plus ? w.real() : w.imag();
}

template <std::floating_point Real>
Real eval_Jhat(const CartesianPoint<Real>& x) {
  const Real rho = std::hypot(x.x1, x.x2);
  if (rho == 0) throw DomainError("eval_Jhat: undefined on the axis");
  return -std::log(rho);
}

// Coefficients of J^{+-}_m = sum_n j_{n,m} I^{+,+-}_{n,|m|}:
//   j_{n,m} = (2 - delta_{0,n}) (-1)^m sqrt(2/pi) / Gamma(m + 1/2)          m >= 0,
//   j_{n,m} = +-(2 - delta_{0,n}) (-1)^m sqrt(2/pi)
//             * Gamma(n + m + 1/2) / (Gamma(m + 1/2) Gamma(n - m + 1/2))    m < 0,
// the sign in the second line following J^{+-}.
template <std::floating_point Real>
Real j_coefficient(int n, int m, Sign sign = Sign::plus) {
  if (n < 0) throw DomainError("j_coefficient: n must be non-negative");
  const Real neumann = n == 0 ? 1 : 2;
  const Real parity = (m % 2 == 0) ? 1 : -1;
  const Real root = std::sqrt(2 / std::numbers::pi_v<Real>);
  if (m >= 0) return neumann * parity * root / gamma_half<Real>(m);
  // Gamma(n + m + 1/2) / Gamma(m + 1/2) as the product of (j + 1/2), j = m .. m + n - 1.
  Rational rising = 1;
  for (int j = m; j <= m + n - 1; ++j) rising *= make_rational(2 * j + 1, 2);
  const Real value = neumann * parity * root * to_real<Real>(rising) / gamma_half<Real>(n - m);
  return sign == Sign::plus ? value : -value;
}

template <std::floating_point Real>
struct FourierPowerReport {
  // Fourier cosine coefficients c_n of (cosh eta - cos theta)^{-(m + 1/2)}
  // by quadrature, and the values predicted from the j coefficients,
  // j_{n,m} Q^m_{n-1/2}(cosh eta) / sinh(eta)^m.
  std::vector<Real> observed;
  std::vector<Real> predicted;
  Real max_residual = 0;
};

template <std::floating_point Real>
FourierPowerReport<Real> fourier_power_check(int m, Real eta, int N) {
  if (m < 0 || N < 0 || !(eta > 0)) throw DomainError("fourier_power_check: need m >= 0, N >= 0, eta > 0");
  constexpr Real pi = std::numbers::pi_v<Real>;
  const Real alpha = m + Real(0.5);
  const Real sh = std::sinh(eta / 2);
  const LegendreQTable<Real> table(std::cosh(eta), N, m);
  FourierPowerReport<Real> report;
  for (int n = 0; n <= N; ++n) {
    auto integrand = [&](Real theta) {
      const Real b = std::sin(theta / 2);
      return std::pow(2 * (sh * sh + b * b), -alpha) * std::cos(n * theta);
    };
    QuadratureOptions options;
    options.endpoint_map = EndpointMap::none;
    const Real integral = integrate_1d(integrand, Real(0), pi, Real(1e-14), options).value;
    const Real c = (n == 0 ? 1 : 2) * integral / pi;
    const Real predicted = j_coefficient<Real>(n, m) * table(n, m) / std::pow(std::sinh(eta), Real(m));
    report.observed.push_back(c);
    report.predicted.push_back(predicted);
    report.max_residual = std::max(report.max_residual, std::abs(c - predicted));
  }
  return report;
}

}  // namespace toroidal
