#pragma once

#include <concepts>

namespace toroidal {

template <std::floating_point Real = double>
struct CartesianPoint {
  Real x0 = 0;
  Real x1 = 0;
  Real x2 = 0;
};

// (eta, theta, phi) with eta > 0, theta in [-pi, pi], phi in (-pi, pi].
template <std::floating_point Real = double>
struct ToroidalPoint {
  Real eta = 1;
  Real theta = 0;
  Real phi = 0;
};

}  // namespace toroidal
