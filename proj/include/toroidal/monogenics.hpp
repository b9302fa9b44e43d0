#pragma once

// Monogenic fields f = f0 + f1 e1 + f2 e2 on the solid torus: the
// generalized Cauchy-Riemann operators, the monogenic constants W, the
// exact monogenics T = d I* (n >= 1), the completion Psi of a harmonic
// scalar and the n = 0 family built from it, the cohomology coefficient,
// and the splitting of quaternion-valued fields as f + g e3.

#include <array>
#include <cmath>
#include <complex>
#include <concepts>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <utility>

#include "toroidal/appell.hpp"
#include "toroidal/errors.hpp"
#include "toroidal/geometry.hpp"
#include "toroidal/harmonics.hpp"
#include "toroidal/quadrature.hpp"
#include "toroidal/quaternion.hpp"

namespace toroidal {

template <std::floating_point Real = double>
using AField = std::function<ReducedQuaternion<Real>(const CartesianPoint<Real>&)>;
template <std::floating_point Real = double>
using HField = std::function<Quaternion<Real>(const CartesianPoint<Real>&)>;

// An A-valued field together with the domain it lives on.
template <std::floating_point Real = double>
struct SampledAField {
  AField<Real> evaluator;
  TorusDomain<Real> domain;

  ReducedQuaternion<Real> operator()(const CartesianPoint<Real>& x) const { return evaluator(x); }
};

namespace detail {

template <std::floating_point Real>
CartesianPoint<Real> step(CartesianPoint<Real> x, int axis, Real h) {
  (axis == 0 ? x.x0 : axis == 1 ? x.x1 : x.x2) += h;
  return x;
}

template <std::floating_point Real, class F>
std::array<Quaternion<Real>, 3> central_gradient(const F& f, const CartesianPoint<Real>& x, Real h,
                                                 const std::optional<TorusDomain<Real>>& domain) {
  const Real size = std::max({std::abs(x.x0), std::abs(x.x1), std::abs(x.x2), Real(1)});
  if (!(h > 1000 * std::numeric_limits<Real>::epsilon() * size)) {
    throw DomainError("finite-difference step is below rounding level");
  }
  std::array<Quaternion<Real>, 3> grad;
  for (int i = 0; i < 3; ++i) {
    const CartesianPoint<Real> plus = step(x, i, h);
    const CartesianPoint<Real> minus = step(x, i, -h);
    if (domain && !(inside(*domain, plus) && inside(*domain, minus))) {
      throw DomainError("finite-difference stencil leaves the domain");
    }
    grad[i] = (as_quaternion<Real>(f(plus)) - as_quaternion<Real>(f(minus))) / (2 * h);
  }
  return grad;
}

}  // namespace detail

// d0 f + e1 d1 f + e2 d2 f by central differences (operator acting from
// the left). f may return a scalar, a reduced quaternion or a quaternion.
template <std::floating_point Real, class F>
Quaternion<Real> fueter_bar(const F& f, const CartesianPoint<Real>& x, Real h,
                            const std::optional<TorusDomain<Real>>& domain = std::nullopt) {
  const auto g = detail::central_gradient(f, x, h, domain);
  return g[0] + Quaternion<Real>::e(1) * g[1] + Quaternion<Real>::e(2) * g[2];
}

// d0 f - e1 d1 f - e2 d2 f.
template <std::floating_point Real, class F>
Quaternion<Real> fueter(const F& f, const CartesianPoint<Real>& x, Real h,
                        const std::optional<TorusDomain<Real>>& domain = std::nullopt) {
  const auto g = detail::central_gradient(f, x, h, domain);
  return g[0] - Quaternion<Real>::e(1) * g[1] - Quaternion<Real>::e(2) * g[2];
}

// W^{+-}_m = J^{+-}_m e1 -+ J^{-+}_m e2.
template <std::floating_point Real>
ReducedQuaternion<Real> eval_W(int m, Sign sign, const CartesianPoint<Real>& x) {
  const Real same = eval_J(m, sign, x);
  const Real other = eval_J(m, flip(sign), x);
  return {0, same, -sign_value(sign) * other};
}

// Scalar, e1 and e2 parts as exact combinations of interior harmonics.
class ExactMonogenic {
 public:
  ExactMonogenic() = default;
  explicit ExactMonogenic(std::array<HarmonicCombination, 3> parts) : parts_(std::move(parts)) {}

  // d h = d0 h - e1 d1 h - e2 d2 h for a harmonic combination h.
  static ExactMonogenic derivative_of(const HarmonicCombination& h) {
    std::array<HarmonicCombination, 3> parts{differentiate(Axis::x0, h), differentiate(Axis::x1, h),
                                             differentiate(Axis::x2, h)};
    for (int i = 1; i < 3; ++i) {
      for (auto& [idx, c] : parts[i]) c = -c;
    }
    return ExactMonogenic(std::move(parts));
  }

  const std::array<HarmonicCombination, 3>& parts() const { return parts_; }

  ExactMonogenic& add(const ExactMonogenic& other, const Rational& weight = 1) {
    for (int i = 0; i < 3; ++i) {
      for (const auto& [idx, c] : other.parts_[i]) parts_[i][idx] += weight * c;
      std::erase_if(parts_[i], [](const auto& e) { return e.second == 0; });
    }
    return *this;
  }

  template <std::floating_point Real>
  ReducedQuaternion<Real> operator()(const CartesianPoint<Real>& x) const {
    return evaluate(to_toroidal(x));
  }

  template <std::floating_point Real>
  ReducedQuaternion<Real> evaluate(const ToroidalPoint<Real>& p) const {
    std::array<LinearForm<Real>, 3> forms{LinearForm<Real>(parts_[0]), LinearForm<Real>(parts_[1]),
                                          LinearForm<Real>(parts_[2])};
    int n_max = 0, m_max = 0;
    for (const auto& f : forms) {
      n_max = std::max(n_max, f.n_max);
      m_max = std::max(m_max, f.m_max);
    }
    const HarmonicEvaluator<Real> ev(p, n_max, m_max);
    return {ev(forms[0]), ev(forms[1]), ev(forms[2])};
  }

 private:
  std::array<HarmonicCombination, 3> parts_;
};

// T^{nu,mu}_{n,m} = d I*^{-nu,mu}_{n-1,m}, n >= 1. T with n = 1 exists only
// for nu = -, since I*^{-}_{0,m} is the zero function.
inline bool is_valid_T(int n, int m, Sign nu, Sign mu) {
  return n >= 1 && HarmonicIndex::is_valid(n - 1, m, flip(nu), mu);
}

inline ExactMonogenic exact_T(const HarmonicIndex& idx, const StarMatrix& s) {
  if (!is_valid_T(idx.n, idx.m, idx.nu, idx.mu)) throw DomainError("exact_T: no such function " + idx.str());
  return ExactMonogenic::derivative_of(star_combination({idx.n - 1, idx.m, flip(idx.nu), idx.mu}, s));
}

inline ExactMonogenic exact_T(int n, int m, Sign nu, Sign mu) {
  if (!is_valid_T(n, m, nu, mu)) {
    throw DomainError("exact_T: no such function (" + std::to_string(n) + "," + std::to_string(m) + "," +
                      sign_symbol(nu) + "," + sign_symbol(mu) + ")");
  }
  return exact_T(HarmonicIndex(n, m, nu, mu), star_matrix(m, n - 1));
}

template <std::floating_point Real>
ReducedQuaternion<Real> eval_T(int n, int m, Sign nu, Sign mu, const CartesianPoint<Real>& x) {
  return exact_T(n, m, nu, mu)(x);
}

// -(1/pi) integral over r_in < |z| < r_out of f(z) / (z - w).
template <std::floating_point Real, class F>
std::complex<Real> teodorescu(const F& f, std::complex<Real> w, Real r_in, Real r_out, Real tol) {
  const Real a = std::abs(w);
  if (!(a > r_in && a < r_out)) throw DomainError("teodorescu: point must lie strictly inside the annulus");
  auto integrand = [&](std::complex<Real> z) -> std::complex<Real> { return std::complex<Real>(f(z)) / (z - w); };
  return -integrate_annulus(integrand, r_in, r_out, w, tol).value / std::numbers::pi_v<Real>;
}

// Scalar field with its gradient. Without an analytic gradient, central
// differences with step 1e-5 are used.
template <std::floating_point Real = double>
struct ScalarField {
  std::function<Real(const CartesianPoint<Real>&)> value;
  std::function<std::array<Real, 3>(const CartesianPoint<Real>&)> gradient;

  std::array<Real, 3> grad(const CartesianPoint<Real>& x) const {
    if (gradient) return gradient(x);
    const Real h = Real(1e-5);
    std::array<Real, 3> g;
    for (int i = 0; i < 3; ++i) g[i] = (value(detail::step(x, i, h)) - value(detail::step(x, i, -h))) / (2 * h);
    return g;
  }

  static ScalarField constant(Real c) {
    return {[c](const CartesianPoint<Real>&) { return c; },
            [](const CartesianPoint<Real>&) { return std::array<Real, 3>{0, 0, 0}; }};
  }

  static ScalarField coordinate(int axis) {
    return {[axis](const CartesianPoint<Real>& x) { return axis == 0 ? x.x0 : axis == 1 ? x.x1 : x.x2; },
            [axis](const CartesianPoint<Real>&) {
              std::array<Real, 3> g{0, 0, 0};
              g[axis] = 1;
              return g;
            }};
  }

  static ScalarField from_combination(const HarmonicCombination& h) {
    auto forms = std::make_shared<std::array<LinearForm<Real>, 4>>(std::array<LinearForm<Real>, 4>{
        LinearForm<Real>(h), LinearForm<Real>(differentiate(Axis::x0, h)),
        LinearForm<Real>(differentiate(Axis::x1, h)), LinearForm<Real>(differentiate(Axis::x2, h))});
    int n_max = 0, m_max = 0;
    for (const auto& f : *forms) {
      n_max = std::max(n_max, f.n_max);
      m_max = std::max(m_max, f.m_max);
    }
    ScalarField out;
    out.value = [forms, n_max, m_max](const CartesianPoint<Real>& x) {
      return HarmonicEvaluator<Real>(x, n_max, m_max)((*forms)[0]);
    };
    out.gradient = [forms, n_max, m_max](const CartesianPoint<Real>& x) {
      const HarmonicEvaluator<Real> ev(x, n_max, m_max);
      return std::array<Real, 3>{ev((*forms)[1]), ev((*forms)[2]), ev((*forms)[3])};
    };
    return out;
  }
};

// Psi[f0] = f0 - integral_0^{x0} (d1 f0 e1 + d2 f0 e2)(t, x1, x2) dt - v(x1, x2),
// v = -(1/2) w1 e1 + (1/2) w2 e2, w1 + i w2 = T_D[(d0 f0)(0, .)] with T_D
// the Teodorescu operator of the annulus cut from the plane x0 = 0.
// If d0 f0 vanishes on that annulus (checked on a probe grid at
// construction), the area integral is skipped.
template <std::floating_point Real = double>
class Psi {
 public:
  Psi(ScalarField<Real> f0, TorusDomain<Real> domain, Real tol = Real(1e-10))
      : f0_(std::move(f0)), domain_(domain), tol_(tol) {
    slice_derivative_vanishes_ = probe_slice();
  }

  bool slice_derivative_vanishes() const { return slice_derivative_vanishes_; }
  const TorusDomain<Real>& domain() const { return domain_; }

  ReducedQuaternion<Real> operator()(const CartesianPoint<Real>& x) const {
    if (!inside(domain_, x)) throw DomainError("Psi: point outside the torus");
    const CartesianPoint<Real> foot{0, x.x1, x.x2};
    if (!inside(domain_, foot)) throw DomainError("Psi: segment to the plane x0 = 0 leaves the torus");
    ReducedQuaternion<Real> out{f0_.value(x), 0, 0};
    if (x.x0 != 0) {
      auto along = [&](Real t) {
        const auto g = f0_.grad(CartesianPoint<Real>{t, x.x1, x.x2});
        return std::complex<Real>(g[1], g[2]);
      };
      const Real lo = std::min(Real(0), x.x0), hi = std::max(Real(0), x.x0);
      QuadratureOptions options;
      options.endpoint_map = EndpointMap::none;
      std::complex<Real> line = integrate_1d(along, lo, hi, tol_, options).value;
      if (x.x0 < 0) line = -line;
      out.a1 -= line.real();
      out.a2 -= line.imag();
    }
    if (!slice_derivative_vanishes_) {
      const std::complex<Real> w = slice_transform({x.x1, x.x2});
      out.a1 += w.real() / 2;
      out.a2 -= w.imag() / 2;
    }
    return out;
  }

  // T_D[(d0 f0)(0, .)] at a point of the slice annulus.
  std::complex<Real> slice_transform(std::complex<Real> w) const {
    auto slice = [this](std::complex<Real> z) { return f0_.grad(CartesianPoint<Real>{0, z.real(), z.imag()})[0]; };
    return teodorescu(slice, w, domain_.slice_inner_radius(), domain_.slice_outer_radius(), tol_);
  }

 private:
  bool probe_slice() const {
    const Real r_in = domain_.slice_inner_radius();
    const Real r_out = domain_.slice_outer_radius();
    Real largest_d0 = 0, largest_grad = 0;
    for (int i = 0; i < 7; ++i) {
      const Real r = r_in + (r_out - r_in) * (i + Real(0.5)) / 7;
      for (int j = 0; j < 13; ++j) {
        const Real t = 2 * std::numbers::pi_v<Real> * (j + Real(0.3)) / 13;
        const auto g = f0_.grad(CartesianPoint<Real>{0, r * std::cos(t), r * std::sin(t)});
        largest_d0 = std::max(largest_d0, std::abs(g[0]));
        largest_grad = std::max({largest_grad, std::abs(g[0]), std::abs(g[1]), std::abs(g[2])});
      }
    }
    return largest_d0 <= Real(1e-12) * std::max(largest_grad, Real(1));
  }

  ScalarField<Real> f0_;
  TorusDomain<Real> domain_;
  Real tol_;
  bool slice_derivative_vanishes_ = false;
};

// coh f = (1/2pi) integral_0^{2pi} (f2 cos t - f1 sin t) r dt over the
// circle (0, r cos t, r sin t), by the periodic trapezoid rule. The sign is
// fixed so that coh W^-_{-1} = +1; the plain circulation of
// f0 dx0 - f1 dx1 - f2 dx2 along this parametrization is its negative.
template <std::floating_point Real, class F>
Real cohomology(const F& f, int n_nodes = 64, Real radius = 1) {
  if (n_nodes < 1 || !(radius > 0)) throw DomainError("cohomology: need n_nodes >= 1 and radius > 0");
  Real sum = 0;
  for (int j = 0; j < n_nodes; ++j) {
    const Real t = 2 * std::numbers::pi_v<Real> * j / n_nodes;
    const Real c = std::cos(t), s = std::sin(t);
    const Quaternion<Real> v = as_quaternion<Real>(f(CartesianPoint<Real>{0, radius * c, radius * s}));
    sum += (v.a2 * c - v.a1 * s) * radius;
  }
  return sum / n_nodes;
}

// The unit circle of the plane x0 = 0 is the core circle eta = infinity,
// where the toroidal chart is singular. Fields built from harmonics are
// integrated on a concentric circle inside the slice annulus instead;
// closedness of the form makes the value independent of the radius.
template <std::floating_point Real>
Real cohomology_radius(const TorusDomain<Real>& domain) {
  return (domain.slice_inner_radius() + 1) / 2;
}

// (1/2pi) times the circulation of f0 dx0 - f1 dx1 - f2 dx2 along
// t -> (0, r cos t, r sin t), without the sign convention.
template <std::floating_point Real, class F>
Real cohomology_literal(const F& f, int n_nodes = 64, Real radius = 1) {
  return -cohomology<Real>(f, n_nodes, radius);
}

// T_{0,m}^{+,mu} = Psi[I^{+,mu}_{0,m}] - (coh Psi[I^{+,mu}_{0,m}]) W^-_{-1}.
template <std::floating_point Real = double>
class T0 {
 public:
  T0(int m, Sign mu, TorusDomain<Real> domain, Real tol = Real(1e-10))
      : index_(0, m, Sign::plus, mu),
        psi_(ScalarField<Real>::from_combination({{index_, Rational(1)}}), domain, tol) {
    coh_ = cohomology<Real>(psi_, 64, cohomology_radius(domain));
  }

  const HarmonicIndex& index() const { return index_; }
  Real psi_cohomology() const { return coh_; }
  const Psi<Real>& psi() const { return psi_; }

  ReducedQuaternion<Real> operator()(const CartesianPoint<Real>& x) const {
    ReducedQuaternion<Real> out = psi_(x);
    if (coh_ != 0) out -= coh_ * eval_W(-1, Sign::minus, x);
    return out;
  }

 private:
  HarmonicIndex index_;
  Psi<Real> psi_;
  Real coh_ = 0;
};

template <std::floating_point Real>
ReducedQuaternion<Real> eval_T0(int m, Sign mu, const CartesianPoint<Real>& x, const TorusDomain<Real>& domain,
                                Real tol = Real(1e-10)) {
  return T0<Real>(m, mu, domain, tol)(x);
}

// (g0 + g1 e1 + g2 e2) e3 = g2 e1 - g1 e2 + g0 e3.
template <std::floating_point Real>
Quaternion<Real> times_e3(const ReducedQuaternion<Real>& g) {
  return {0, g.a2, -g.a1, g.a0};
}

// F = f + g e3 with g = Psi[F3] and f = F - g e3.
template <std::floating_point Real = double>
class HDecomposition {
 public:
  HDecomposition(HField<Real> F, TorusDomain<Real> domain, Real tol = Real(1e-10))
      : F_(std::move(F)), g_(ScalarField<Real>{[F = F_](const CartesianPoint<Real>& x) { return F(x).a3; }, {}},
                             domain, tol) {}

  ReducedQuaternion<Real> g(const CartesianPoint<Real>& x) const { return g_(x); }
  ReducedQuaternion<Real> f(const CartesianPoint<Real>& x) const {
    const Quaternion<Real> r = F_(x) - times_e3(g(x));
    return {r.a0, r.a1, r.a2};
  }
  // |F - (f + g e3)|, including the e3 part that f cannot carry.
  Real reconstruction_residual(const CartesianPoint<Real>& x) const {
    const Quaternion<Real> back = as_quaternion<Real>(f(x)) + times_e3(g(x));
    return (F_(x) - back).norm();
  }

 private:
  HField<Real> F_;
  Psi<Real> g_;
};

template <std::floating_point Real>
HDecomposition<Real> decompose_H(HField<Real> F, const TorusDomain<Real>& domain, Real tol = Real(1e-10)) {
  return HDecomposition<Real>(std::move(F), domain, tol);
}

}  // namespace toroidal
