#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "toroidal/geometry.hpp"
#include "toroidal/quadrature.hpp"

using namespace toroidal;
using std::numbers::pi;

TEST(Integrate1d, Constant) {
  const auto r = integrate_1d([](double) { return 1.0; }, 0.0, 1.0, 1e-12);
  EXPECT_NEAR(r.value, 1.0, 1e-15);
  EXPECT_GE(r.error_estimate, 0.0);
  EXPECT_GE(r.evaluations, 1u);
}

TEST(Integrate1d, Logarithm) {
  const auto r = integrate_1d([](double s) { return 1 / (2 - s); }, -1.0, 1.0, 1e-13);
  EXPECT_NEAR(r.value, std::log(3.0), 1e-13);
}

TEST(Integrate1d, EndpointSingularity) {
  const auto r = integrate_1d([](double s) { return 1 / std::sqrt((1 - s) * (1 + s)); }, -1.0, 1.0, 1e-12);
  EXPECT_NEAR(r.value, pi, 1e-11);
}

TEST(Integrate1d, UnmappedEndpointSingularityReportsFailure) {
  // Plain bisection cannot resolve the singular endpoint below the
  // spacing of doubles near 1; this must surface, not pass silently.
  QuadratureOptions options;
  options.endpoint_map = EndpointMap::none;
  EXPECT_THROW(integrate_1d([](double s) { return 1 / std::sqrt((1 - s) * (1 + s)); }, -1.0, 1.0, 1e-12, options),
               QuadratureError);
}

TEST(Integrate1d, RefinementStaysWithinReportedError) {
  auto f = [](double x) { return std::exp(-x) * std::cos(5 * x); };
  const double exact = (1 - std::exp(-3.0) * (std::cos(15.0) - 5 * std::sin(15.0))) / 26;
  for (double tol : {1e-6, 5e-7, 1e-9, 5e-10}) {
    const auto r = integrate_1d(f, 0.0, 3.0, tol);
    EXPECT_LE(std::abs(r.value - exact), r.error_estimate + 1e-15) << tol;
  }
}

TEST(Integrate1d, ComplexValued) {
  auto f = [](double x) { return std::complex<double>(std::cos(x), std::sin(x)); };
  const auto r = integrate_1d(f, 0.0, pi / 2, 1e-13);
  EXPECT_NEAR(r.value.real(), 1.0, 1e-13);
  EXPECT_NEAR(r.value.imag(), 1.0, 1e-13);
}

TEST(Integrate1d, RelativeModeResolvesTinyIntegrals) {
  QuadratureOptions options;
  options.mode = ToleranceMode::relative;
  const auto r = integrate_1d([](double x) { return 1e-30 * x * x; }, 0.0, 1.0, 1e-12, options);
  EXPECT_NEAR(r.value / (1e-30 / 3), 1.0, 1e-12);
}

TEST(Integrate1d, RejectsBadInterval) {
  EXPECT_THROW(integrate_1d([](double) { return 1.0; }, 1.0, 0.0, 1e-8), DomainError);
}

TEST(Integrate1d, BudgetExhaustionIsReported) {
  QuadratureOptions options;
  options.max_subdivisions = 3;
  EXPECT_THROW(integrate_1d([](double x) { return std::sin(200 * x); }, 0.0, 10.0, 1e-14, options),
               QuadratureError);
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  const auto [x, w] = gauss_legendre<double>(6);
  double sum = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * std::pow(x[i], 10);
  EXPECT_NEAR(sum, 2.0 / 11, 1e-15);
}

TEST(IntegrateAnnulus, Area) {
  const auto r = integrate_annulus([](std::complex<double>) { return 1.0; }, 1.0, 2.0, std::nullopt, 1e-12);
  EXPECT_NEAR(r.value, 3 * pi, 1e-11);
}

TEST(IntegrateAnnulus, OddIntegrandVanishes) {
  const auto r =
      integrate_annulus([](std::complex<double> z) { return z.real(); }, 1.0, 2.0, std::nullopt, 1e-12);
  EXPECT_NEAR(r.value, 0.0, 1e-11);
}

TEST(IntegrateAnnulus, AreaThroughSingularPolarPatch) {
  // Same area computed from rays centred at an interior point.
  const std::complex<double> w(1.5, 0.2);
  const auto r = integrate_annulus([](std::complex<double>) { return 1.0; }, 1.0, 2.0, w, 1e-12);
  EXPECT_NEAR(r.value, 3 * pi, 1e-10);
}

TEST(IntegrateAnnulus, InverseDistanceSingularity) {
  const std::complex<double> w(1.5, 0.0);
  auto f = [w](std::complex<double> z) { return 1 / std::abs(z - w); };
  const auto coarse = integrate_annulus(f, 1.0, 2.0, w, 1e-8);
  const auto fine = integrate_annulus(f, 1.0, 2.0, w, 5e-9);
  EXPECT_TRUE(std::isfinite(coarse.value));
  EXPECT_LE(std::abs(coarse.value - fine.value), coarse.error_estimate + fine.error_estimate);
  // Independent check: for a disk of radius R about w the integral is 2 pi R;
  // the full annulus must exceed the largest such disk, |w| - r_in = 0.5.
  EXPECT_GT(coarse.value, 2 * pi * 0.5);
}

TEST(IntegrateTorus, Volume) {
  for (double eta0 : {0.5, 1.0, 2.0}) {
    const double tol = 1e-10;
    const auto r = integrate_torus([](const CartesianPoint<double>&) { return 1.0; }, eta0, tol);
    EXPECT_NEAR(r.value, TorusDomain<double>(eta0).volume(), 10 * tol * TorusDomain<double>(eta0).volume())
        << eta0;
  }
  // Direct value at eta0 = 1: 2 pi^2 coth(1) / sinh(1)^2.
  EXPECT_NEAR(TorusDomain<double>(1.0).volume(), 18.766431175578076, 1e-12);
}

TEST(IntegrateTorus, OddFunctionsVanish) {
  const auto r0 = integrate_torus([](const CartesianPoint<double>& x) { return x.x0; }, 1.0, 1e-9);
  const auto r2 = integrate_torus([](const CartesianPoint<double>& x) { return x.x2; }, 1.0, 1e-9);
  EXPECT_NEAR(r0.value, 0.0, 1e-8);
  EXPECT_NEAR(r2.value, 0.0, 1e-8);
}
