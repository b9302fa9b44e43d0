#pragma once

// Toroidal coordinates, the solid torus eta > eta0, and tensor-product
// sampling grids.

#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <vector>

#include "toroidal/errors.hpp"
#include "toroidal/points.hpp"
#include "toroidal/quadrature.hpp"

namespace toroidal {

template <std::floating_point Real = double>
struct TorusDomain {
  Real eta0 = 1;

  explicit TorusDomain(Real eta0_in = 1) : eta0(eta0_in) {
    if (!(eta0 > 0)) throw DomainError("TorusDomain: eta0 must be positive");
  }
  // Radii of the annulus cut out of the plane x0 = 0.
  Real slice_inner_radius() const { return std::tanh(eta0 / 2); }
  Real slice_outer_radius() const { return 1 / std::tanh(eta0 / 2); }
  Real volume() const {
    const Real s = std::sinh(eta0);
    return 2 * std::numbers::pi_v<Real> * std::numbers::pi_v<Real> / (std::tanh(eta0) * s * s);
  }
};

// Reduces an angle to [-pi, pi].
template <std::floating_point Real>
Real wrap_angle(Real a) {
  return std::remainder(a, 2 * std::numbers::pi_v<Real>);
}

// Written in u = exp(-eta) so that eta = infinity (the limit circle) is
// representable and large eta does not overflow cosh.
template <std::floating_point Real>
CartesianPoint<Real> to_cartesian(const ToroidalPoint<Real>& p) {
  if (!(p.eta > 0)) throw DomainError("to_cartesian: eta must be positive");
  const Real u = std::exp(-p.eta);
  const Real d = 1 - 2 * u * std::cos(p.theta) + u * u;
  const Real r = (1 - u * u) / d;
  return {2 * u * std::sin(p.theta) / d, r * std::cos(p.phi), r * std::sin(p.phi)};
}

// Inverse via distances to the two foci (x0, rho) = (0, +-1) of the
// meridian half-plane.
template <std::floating_point Real>
ToroidalPoint<Real> to_toroidal(const CartesianPoint<Real>& x) {
  const Real rho = std::hypot(x.x1, x.x2);
  const Real near = std::hypot(x.x0, rho - 1);
  if (near == 0) throw DegenerateLocusError("to_toroidal: point on the limit circle");
  if (rho == 0) throw DegenerateLocusError("to_toroidal: point on the symmetry axis");
  const Real far = std::hypot(x.x0, rho + 1);
  ToroidalPoint<Real> p;
  // log(far/near) via log1p keeps accuracy when the point is close to
  // the axis and the ratio is close to 1.
  p.eta = std::log1p((far - near) / near);
  p.theta = std::atan2(2 * x.x0, x.x0 * x.x0 + rho * rho - 1);
  p.phi = std::atan2(x.x2, x.x1);
  if (p.phi == -std::numbers::pi_v<Real>) p.phi = std::numbers::pi_v<Real>;
  return p;
}

template <std::floating_point Real>
bool inside(const TorusDomain<Real>& domain, const CartesianPoint<Real>& x) {
  const Real rho = std::hypot(x.x1, x.x2);
  const Real near = std::hypot(x.x0, rho - 1);
  if (near == 0) return true;
  if (rho == 0) return false;
  return to_toroidal(x).eta > domain.eta0;
}

template <std::floating_point Real = double>
struct GridNode {
  CartesianPoint<Real> x;
  ToroidalPoint<Real> p;
  Real weight = 0;
};

// Gauss-Legendre in u = exp(-eta) on (0, exp(-(eta0 + margin))),
// midpoint-periodic in theta and phi. Nodes are ordered by increasing
// eta, then theta, then phi. Weights integrate over {eta > eta0 + margin}.
template <std::floating_point Real>
std::vector<GridNode<Real>> sample_grid(const TorusDomain<Real>& domain, int n_eta, int n_theta, int n_phi,
                                        Real margin) {
  if (n_eta < 1 || n_theta < 1 || n_phi < 1) throw DomainError("sample_grid: counts must be positive");
  if (!(margin > 0)) throw DomainError("sample_grid: margin must be positive");
  constexpr Real pi = std::numbers::pi_v<Real>;
  const Real u_max = std::exp(-(domain.eta0 + margin));
  const auto [nodes, weights] = gauss_legendre<Real>(n_eta);
  std::vector<GridNode<Real>> grid;
  grid.reserve(static_cast<std::size_t>(n_eta) * n_theta * n_phi);
  const Real dtheta = 2 * pi / n_theta;
  const Real dphi = 2 * pi / n_phi;
  // Largest u first, so that eta increases along the outer loop.
  for (int i = n_eta - 1; i >= 0; --i) {
    const Real u = u_max * (nodes[i] + 1) / 2;
    const Real wu = u_max * weights[i] / 2;
    for (int j = 0; j < n_theta; ++j) {
      const Real theta = -pi + (j + Real(0.5)) * dtheta;
      const Real d = 1 - 2 * u * std::cos(theta) + u * u;
      const Real jac = 4 * u * (1 - u * u) / (d * d * d);
      for (int k = 0; k < n_phi; ++k) {
        GridNode<Real> node;
        node.p = {-std::log(u), theta, -pi + (k + Real(0.5)) * dphi};
        node.x = to_cartesian(node.p);
        node.weight = wu * dtheta * dphi * jac;
        grid.push_back(node);
      }
    }
  }
  return grid;
}

}  // namespace toroidal
