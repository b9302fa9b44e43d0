#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "toroidal/harmonics.hpp"

using namespace toroidal;
using std::numbers::pi;

namespace {

using Terms = std::vector<std::pair<HarmonicIndex, Rational>>;

void expect_terms(const std::vector<DerivativeTerm>& got, const Terms& want) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].index, want[i].first) << got[i].index;
    EXPECT_EQ(got[i].coefficient, want[i].second) << got[i].index;
  }
}

std::vector<HarmonicIndex> all_indices(int n_max, int m_max) {
  std::vector<HarmonicIndex> out;
  for (int n = 0; n <= n_max; ++n)
    for (int m = 0; m <= m_max; ++m)
      for (Sign nu : {Sign::plus, Sign::minus})
        for (Sign mu : {Sign::plus, Sign::minus})
          if (HarmonicIndex::is_valid(n, m, nu, mu)) out.emplace_back(n, m, nu, mu);
  return out;
}

using LD = long double;

LD eval_at(const HarmonicIndex& idx, const CartesianPoint<LD>& x) { return eval_I(idx, x); }

CartesianPoint<LD> shifted(CartesianPoint<LD> x, Axis axis, LD h) {
  if (axis == Axis::x0) x.x0 += h;
  if (axis == Axis::x1) x.x1 += h;
  if (axis == Axis::x2) x.x2 += h;
  return x;
}

}  // namespace

TEST(HarmonicIndex, RejectsVanishingFamilies) {
  EXPECT_THROW(HarmonicIndex(0, 2, Sign::minus, Sign::plus), DomainError);
  EXPECT_THROW(HarmonicIndex(3, 0, Sign::plus, Sign::minus), DomainError);
  EXPECT_THROW(HarmonicIndex(-1, 0, Sign::plus, Sign::plus), DomainError);
  EXPECT_NO_THROW(HarmonicIndex(0, 0, Sign::plus, Sign::plus));
  EXPECT_EQ(HarmonicIndex(2, 1, Sign::plus, Sign::minus).str(), "(2,1,+,-)");
}

TEST(EvalI, Examples) {
  const double eta = 1.0;
  EXPECT_NEAR(eval_I(HarmonicIndex(0, 0, Sign::plus, Sign::plus), ToroidalPoint<double>{eta, pi / 2, 0.4}),
              2.45381343673970960648650221386, 1e-13);
  EXPECT_EQ(eval_I(HarmonicIndex(1, 0, Sign::minus, Sign::plus), ToroidalPoint<double>{eta, 0.0, 0.4}), 0.0);
  EXPECT_NEAR(eval_I(HarmonicIndex(2, 1, Sign::plus, Sign::minus), ToroidalPoint<double>{1.0, 0.7, 0.3}),
              -0.011960780658983849511703827096, 1e-14);
}

TEST(EvalI, CartesianMatchesToroidal) {
  const ToroidalPoint<double> p{1.3, -2.1, 0.9};
  const HarmonicIndex idx(4, 3, Sign::minus, Sign::minus);
  EXPECT_NEAR(eval_I(idx, p), eval_I(idx, to_cartesian(p)), 1e-13);
}

TEST(EvalJ, Examples) {
  const CartesianPoint<double> x{0.3, 1.0, 1.0};
  EXPECT_EQ(eval_J(0, Sign::plus, x), 1.0);
  EXPECT_EQ(eval_J(0, Sign::minus, x), 0.0);
  EXPECT_NEAR(eval_J(2, Sign::plus, x), 0.0, 1e-15);
  EXPECT_NEAR(eval_J(2, Sign::minus, x), 2.0, 1e-15);
  for (double t : {0.0, 0.4, 2.5, -1.2}) {
    EXPECT_NEAR(eval_J(-1, Sign::minus, CartesianPoint<double>{0.0, std::cos(t), std::sin(t)}), -std::sin(t), 1e-15);
  }
  EXPECT_NEAR(eval_Jhat(CartesianPoint<double>{5.0, 3.0, 4.0}), -std::log(5.0), 1e-15);
  EXPECT_THROW(eval_J(-2, Sign::plus, CartesianPoint<double>{1.0, 0.0, 0.0}), DomainError);
  EXPECT_THROW(eval_Jhat(CartesianPoint<double>{1.0, 0.0, 0.0}), DomainError);
}

TEST(EvalJ, ComplexPowerPairing) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const CartesianPoint<double> x{u(rng), u(rng), u(rng)};
    const std::complex<double> z(x.x1, x.x2);
    for (int m = -4; m <= 5; ++m) {
      const std::complex<double> w = std::pow(z, m);
      EXPECT_NEAR(eval_J(m, Sign::plus, x), w.real(), 1e-12 * (1 + std::abs(w)));
      EXPECT_NEAR(eval_J(m, Sign::minus, x), w.imag(), 1e-12 * (1 + std::abs(w)));
    }
  }
}

TEST(DerivativeTerms, Examples) {
  const Sign p = Sign::plus, n = Sign::minus;
  expect_terms(d0_terms({0, 0, p, p}), {{{1, 0, n, p}, make_rational(-1, 2)}});
  expect_terms(d0_terms({0, 3, p, n}), {{{1, 3, n, n}, make_rational(5, 2)}});
  expect_terms(d0_terms({2, 1, p, p}), {{{1, 1, n, p}, make_rational(-5, 4)},
                                        {{2, 1, n, p}, make_rational(2)},
                                        {{3, 1, n, p}, make_rational(-3, 4)}});
  // Minus in theta flips the prefactor and drops the vanishing (0, -) target.
  expect_terms(d0_terms({1, 0, n, p}), {{{0, 0, p, p}, make_rational(1, 4)},
                                        {{1, 0, p, p}, make_rational(-1)},
                                        {{2, 0, p, p}, make_rational(3, 4)}});
  expect_terms(d1_terms({0, 0, p, p}), {{{0, 1, p, p}, make_rational(1)}, {{1, 1, p, p}, make_rational(-1)}});
  expect_terms(d2_terms({0, 0, p, p}), {{{0, 1, p, n}, make_rational(1)}, {{1, 1, p, n}, make_rational(-1)}});
  EXPECT_EQ(d1_terms({1, 1, p, p}).size(), 6u);
  for (const auto& term : d1_terms({1, 1, n, p})) EXPECT_NE(term.coefficient, 0);
}

TEST(DerivativeTerms, KappaNeverVanishesBelowDiagonal) {
  for (int m = 0; m <= 20; ++m)
    for (int n = 1; n <= 60; ++n) EXPECT_NE(kappa(n, n - 1, m), 0) << n << "," << m;
}

TEST(DerivativeTerms, MatchCentralDifferences) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<LD> eta(1.0L, 2.5L), ang(-3.0L, 3.0L);
  const LD h = 1e-5L;
  for (int trial = 0; trial < 3; ++trial) {
    const CartesianPoint<LD> x = to_cartesian(ToroidalPoint<LD>{eta(rng), ang(rng), ang(rng)});
    for (const auto& idx : all_indices(6, 6)) {
      for (Axis axis : {Axis::x0, Axis::x1, Axis::x2}) {
        const LD fd = (eval_at(idx, shifted(x, axis, h)) - eval_at(idx, shifted(x, axis, -h))) / (2 * h);
        HarmonicCombination combination;
        for (const auto& term : derivative_terms(axis, idx)) combination[term.index] = term.coefficient;
        const LD analytic = eval_combination(combination, x);
        // Scale by a neighbour-sized value so that points near a nodal set
        // of the derivative are not judged on relative error alone.
        const LD scale = std::max(std::abs(fd), std::abs(eval_at(idx, x)));
        EXPECT_LT(std::abs(fd - analytic), 1e-6L * scale)
            << idx << " axis " << static_cast<int>(axis) << " fd " << static_cast<double>(fd) << " analytic "
            << static_cast<double>(analytic);
      }
    }
  }
}

TEST(DerivativeTerms, MixedPartialsCommute) {
  for (const auto& idx : all_indices(5, 5)) {
    const HarmonicCombination base{{idx, Rational(1)}};
    for (auto [a, b] : {std::pair{Axis::x0, Axis::x1}, std::pair{Axis::x0, Axis::x2}, std::pair{Axis::x1, Axis::x2}}) {
      EXPECT_EQ(differentiate(b, differentiate(a, base)), differentiate(a, differentiate(b, base))) << idx;
    }
  }
}

TEST(DerivativeTerms, LaplacianVanishesExactly) {
  for (const auto& idx : all_indices(8, 4)) {
    const HarmonicCombination base{{idx, Rational(1)}};
    HarmonicCombination laplacian;
    for (Axis axis : {Axis::x0, Axis::x1, Axis::x2}) {
      for (const auto& [k, c] : differentiate(axis, differentiate(axis, base))) laplacian[k] += c;
    }
    std::erase_if(laplacian, [](const auto& e) { return e.second == 0; });
    EXPECT_TRUE(laplacian.empty()) << idx;
  }
}

TEST(JCoefficient, Values) {
  EXPECT_NEAR(j_coefficient<double>(0, 0), std::sqrt(2.0) / pi, 1e-15);
  EXPECT_NEAR(j_coefficient<double>(3, 0), 2 * std::sqrt(2.0) / pi, 1e-15);
  EXPECT_NEAR(j_coefficient<double>(2, 1), -4 * std::sqrt(2.0) / pi, 1e-15);
  // m = -1, n = 2: 2 (-1) sqrt(2/pi) Gamma(3/2) / (Gamma(-1/2) Gamma(7/2)).
  const double expected = 2 * -1 * std::sqrt(2 / pi) * (std::sqrt(pi) / 2) /
                          (-2 * std::sqrt(pi) * (15 * std::sqrt(pi) / 8));
  EXPECT_NEAR(j_coefficient<double>(2, -1, Sign::plus), expected, 1e-15);
  EXPECT_NEAR(j_coefficient<double>(2, -1, Sign::minus), -expected, 1e-15);
}

TEST(JCoefficient, ExpansionReproducesPlanarPowers) {
  const int N = 40;
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> eta(1.5, 3.0), ang(-3.0, 3.0);
  for (int trial = 0; trial < 5; ++trial) {
    const ToroidalPoint<double> p{eta(rng), ang(rng), ang(rng)};
    const CartesianPoint<double> x = to_cartesian(p);
    const HarmonicEvaluator<double> ev(p, N, 4);
    for (int m = -3; m <= 3; ++m) {
      for (Sign s : {Sign::plus, Sign::minus}) {
        if (m == 0 && s == Sign::minus) continue;
        double sum = 0;
        for (int n = 0; n <= N; ++n) sum += j_coefficient<double>(n, m, s) * ev(HarmonicIndex(n, std::abs(m), Sign::plus, s));
        EXPECT_NEAR(sum, eval_J(m, s, x), 1e-10) << "m " << m << " sign " << sign_symbol(s);
      }
    }
  }
}

TEST(FourierPowerCheck, MatchesQuadrature) {
  EXPECT_LT(fourier_power_check(0, 1.0, 20).max_residual, 1e-10);
  EXPECT_LT(fourier_power_check(2, 2.0, 20).max_residual, 1e-10);
  for (int m = 0; m <= 4; ++m) EXPECT_LT(fourier_power_check(m, 1.0, 10).max_residual, 1e-8) << m;
  EXPECT_THROW(fourier_power_check(1, -1.0, 5), DomainError);
}

TEST(FourierPowerCheck, ResidualShrinksWithEta) {
  const double near = fourier_power_check(1, 0.5, 20).max_residual;
  const double far = fourier_power_check(1, 3.0, 20).max_residual;
  EXPECT_LE(far, near);
}
