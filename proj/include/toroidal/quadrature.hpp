#pragma once

// Adaptive Gauss-Kronrod integration on intervals, annuli and the solid
// torus. Integrands may be real or complex valued.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "toroidal/errors.hpp"
#include "toroidal/points.hpp"

namespace toroidal {

template <class V, class Real = double>
struct QuadratureResult {
  V value{};
  Real error_estimate = 0;
  std::size_t evaluations = 0;
};

enum class EndpointMap {
  none,
  // x = a + (b - a) u^2 (3 - 2u); flattens integrable endpoint
  // singularities of inverse-square-root type.
  cubic,
};

enum class ToleranceMode {
  // error <= tol * max(1, |value|)
  mixed,
  // error <= tol * |value|; for integrals whose size is not known in advance
  relative,
};

struct QuadratureOptions {
  std::size_t max_subdivisions = 5000;
  EndpointMap endpoint_map = EndpointMap::cubic;
  ToleranceMode mode = ToleranceMode::mixed;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule.
inline constexpr std::array<long double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.0L};
inline constexpr std::array<long double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
inline constexpr std::array<long double, 4> kGaussWeights = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

template <class V, class Real>
struct Segment {
  Real a;
  Real b;
  V value;
  Real error;
};

template <class V>
auto magnitude(const V& v) {
  using std::abs;
  return abs(v);
}

template <class Real, class F>
auto kronrod15(F& f, Real a, Real b) {
  using V = std::decay_t<std::invoke_result_t<F&, Real>>;
  const Real center = (a + b) / 2;
  const Real half = (b - a) / 2;
  const V fc = f(center);
  V kronrod = fc * static_cast<Real>(kKronrodWeights[7]);
  V gauss = fc * static_cast<Real>(kGaussWeights[3]);
  for (int j = 0; j < 7; ++j) {
    const Real dx = half * static_cast<Real>(kKronrodNodes[j]);
    const V sum = f(center - dx) + f(center + dx);
    kronrod += sum * static_cast<Real>(kKronrodWeights[j]);
    if (j % 2 == 1) gauss += sum * static_cast<Real>(kGaussWeights[j / 2]);
  }
  return Segment<V, Real>{a, b, kronrod * half, static_cast<Real>(magnitude(V(kronrod - gauss)) * std::abs(half))};
}

template <class Real, class F>
auto adaptive(F& f, Real a, Real b, Real tol, const QuadratureOptions& options) {
  const std::size_t max_subdivisions = options.max_subdivisions;
  const Real floor = options.mode == ToleranceMode::mixed ? Real(1) : Real(0);
  using V = std::decay_t<std::invoke_result_t<F&, Real>>;
  using Seg = Segment<V, Real>;
  const auto by_error = [](const Seg& x, const Seg& y) { return x.error < y.error; };
  const auto target = [tol, floor](const V& total) {
    return tol * std::max(floor, static_cast<Real>(magnitude(total)));
  };

  std::vector<Seg> heap{kronrod15(f, a, b)};
  std::size_t evaluations = 15;
  V total = heap.front().value;
  Real error = heap.front().error;
  bool stalled = false;
  const auto resum = [&heap, &total, &error] {
    total = V{};
    error = 0;
    for (const Seg& s : heap) {
      total += s.value;
      error += s.error;
    }
  };
  while (heap.size() < max_subdivisions) {
    if (!(error > target(total))) {
      // The running sums drift under repeated updates; confirm before stopping.
      resum();
      if (!(error > target(total))) break;
    }
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Seg worst = heap.back();
    const Real mid = (worst.a + worst.b) / 2;
    const Real scale = std::max({std::abs(worst.a), std::abs(worst.b), Real(1)});
    if (worst.b - worst.a < 256 * std::numeric_limits<Real>::epsilon() * scale) {
      // Cannot split further.
      std::push_heap(heap.begin(), heap.end(), by_error);
      stalled = true;
      break;
    }
    heap.pop_back();
    Seg left = kronrod15(f, worst.a, mid);
    Seg right = kronrod15(f, mid, worst.b);
    evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
  }

  // Deterministic final sum in left-to-right order.
  std::sort(heap.begin(), heap.end(), [](const Seg& x, const Seg& y) { return x.a < y.a; });
  QuadratureResult<V, Real> out;
  out.value = V{};
  for (const Seg& s : heap) {
    out.value += s.value;
    out.error_estimate += s.error;
  }
  out.evaluations = evaluations;
  if (out.error_estimate > target(out.value)) {
    throw QuadratureError(stalled ? "integrate_1d: interval width reached rounding level before tolerance"
                                  : "integrate_1d: subdivision limit reached before tolerance",
                          static_cast<double>(magnitude(out.value)), static_cast<double>(out.error_estimate));
  }
  return out;
}

}  // namespace detail

// Integral of f over [a, b]. By default the returned error_estimate is
// at most tol * max(1, |value|); see ToleranceMode. Throws
// QuadratureError when the subdivision budget runs out.
template <class F, std::floating_point Real>
auto integrate_1d(F&& f, Real a, Real b, Real tol, const QuadratureOptions& options = {}) {
  if (!(a < b)) throw DomainError("integrate_1d: requires a < b");
  if (!(tol > 0)) throw DomainError("integrate_1d: tolerance must be positive");
  if (options.endpoint_map == EndpointMap::cubic) {
    const Real width = b - a;
    auto mapped = [&f, a, width](Real u) {
      const Real x = a + width * u * u * (3 - 2 * u);
      return f(x) * (width * 6 * u * (1 - u));
    };
    return detail::adaptive(mapped, Real(0), Real(1), tol, options);
  }
  return detail::adaptive(f, a, b, tol, options);
}

// Gauss-Legendre nodes and weights on [-1, 1].
template <std::floating_point Real>
std::pair<std::vector<Real>, std::vector<Real>> gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  // Legendre P_n and its derivative at x.
  auto legendre = [n](Real x) {
    Real p0 = 1;
    Real p1 = x;
    for (int k = 2; k <= n; ++k) {
      const Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1;
    return std::pair<Real, Real>{p1, n * (x * p1 - p0) / (x * x - 1)};
  };
  std::vector<Real> nodes(n);
  std::vector<Real> weights(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Real x = std::cos(std::numbers::pi_v<Real> * (i + Real(0.75)) / (n + Real(0.5)));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(x);
      const Real dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 4 * std::numeric_limits<Real>::epsilon()) break;
    }
    const Real dp = legendre(x).second;
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2 / ((1 - x * x) * dp * dp);
  }
  return {nodes, weights};
}

// Area integral of f(z) over r_in < |z| < r_out. With a singular point w
// inside the annulus the integral is taken in polar coordinates centred
// at w, which absorbs a 1/|z - w| singularity into the Jacobian. Rays
// from w are clipped by both circles; the angular integral is split
// where rays become tangent to the inner circle.
template <class F, std::floating_point Real>
auto integrate_annulus(F&& f, Real r_in, Real r_out, std::optional<std::complex<std::type_identity_t<Real>>> singularity,
                       std::type_identity_t<Real> tol) {
  using C = std::complex<Real>;
  using V = std::decay_t<std::invoke_result_t<F&, C>>;
  if (!(r_in >= 0 && r_in < r_out)) throw DomainError("integrate_annulus: need 0 <= r_in < r_out");
  constexpr Real pi = std::numbers::pi_v<Real>;
  const Real inner_tol = tol / 10;
  QuadratureResult<V, Real> out;
  Real inner_error = 0;
  std::size_t inner_evaluations = 0;

  auto radial = [&](C origin, C direction, Real r0, Real r1) {
    if (!(r1 > r0)) return V{};
    auto g = [&](Real r) { return f(origin + r * direction) * r; };
    const auto res = integrate_1d(g, r0, r1, inner_tol);
    inner_error = std::max(inner_error, res.error_estimate);
    inner_evaluations += res.evaluations;
    return res.value;
  };

  auto accumulate = [&](const QuadratureResult<V, Real>& res, Real length) {
    out.value += res.value;
    out.error_estimate += res.error_estimate + inner_error * length;
    out.evaluations += res.evaluations;
  };

  if (!singularity) {
    auto angular = [&](Real theta) { return radial(C(0), std::polar(Real(1), theta), r_in, r_out); };
    accumulate(integrate_1d(angular, -pi, pi, tol), 2 * pi);
    out.evaluations = inner_evaluations;
    return out;
  }

  const C w = *singularity;
  const Real a = std::abs(w);
  if (!(a > r_in && a < r_out)) throw DomainError("integrate_annulus: singular point must lie inside the annulus");
  const Real beta = std::arg(w);
  const Real gamma = std::acos(-std::sqrt(a * a - r_in * r_in) / a);
  QuadratureOptions mapped;
  mapped.endpoint_map = EndpointMap::cubic;

  auto miss = [&](Real psi) {
    const C d = std::polar(Real(1), psi);
    const Real p = a * std::cos(psi - beta);
    const Real reach = -p + std::sqrt(p * p + r_out * r_out - a * a);
    return radial(w, d, Real(0), reach);
  };
  auto hit = [&](Real psi) {
    const C d = std::polar(Real(1), psi);
    const Real p = a * std::cos(psi - beta);
    const Real reach = -p + std::sqrt(p * p + r_out * r_out - a * a);
    const Real disc = std::sqrt(std::max(Real(0), p * p - (a * a - r_in * r_in)));
    return radial(w, d, Real(0), -p - disc) + radial(w, d, -p + disc, reach);
  };
  accumulate(integrate_1d(miss, beta - gamma, beta + gamma, tol, mapped), 2 * gamma);
  accumulate(integrate_1d(hit, beta + gamma, beta + 2 * pi - gamma, tol, mapped), 2 * (pi - gamma));
  out.evaluations = inner_evaluations;
  return out;
}

// Volume integral of f over the solid torus eta > eta0, in the variables
// u = exp(-eta), theta, phi. In these variables the volume element
// sinh(eta) / (cosh(eta) - cos(theta))^3 becomes
// 4u(1 - u^2) / (1 - 2u cos(theta) + u^2)^3, analytic up to u = 0.
template <class F, std::floating_point Real>
auto integrate_torus(F&& f, Real eta0, Real tol) {
  using V = std::decay_t<std::invoke_result_t<F&, CartesianPoint<Real>>>;
  if (!(eta0 > 0)) throw DomainError("integrate_torus: eta0 must be positive");
  constexpr Real pi = std::numbers::pi_v<Real>;
  const Real u_max = std::exp(-eta0);
  const Real inner_tol = tol / 10;
  std::size_t evaluations = 0;
  Real inner_error = 0;

  auto over_theta = [&](Real u) {
    auto over_phi_outer = [&](Real theta) {
      const Real d = 1 - 2 * u * std::cos(theta) + u * u;
      const Real x0 = 2 * u * std::sin(theta) / d;
      const Real r = (1 - u * u) / d;
      const Real jac = 4 * u * (1 - u * u) / (d * d * d);
      auto over_phi = [&](Real phi) { return f(CartesianPoint<Real>{x0, r * std::cos(phi), r * std::sin(phi)}) * jac; };
      const auto res = integrate_1d(over_phi, -pi, pi, inner_tol / 10);
      evaluations += res.evaluations;
      inner_error = std::max(inner_error, res.error_estimate);
      return res.value;
    };
    const auto res = integrate_1d(over_phi_outer, -pi, pi, inner_tol);
    inner_error = std::max(inner_error, res.error_estimate);
    return res.value;
  };
  auto res = integrate_1d(over_theta, Real(0), u_max, tol);
  QuadratureResult<V, Real> out;
  out.value = res.value;
  out.error_estimate = res.error_estimate + inner_error * u_max * 2 * pi;
  out.evaluations = evaluations;
  return out;
}

}  // namespace toroidal
