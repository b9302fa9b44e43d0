#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "toroidal/expansion.hpp"

using namespace toroidal;

namespace {

const TorusDomain<double> domain(1.0);

// Margin 0.5 for the series checks, coarse enough to be quick.
std::vector<GridNode<double>> check_grid() { return sample_grid(domain, 6, 12, 6, 0.5); }

std::vector<GridNode<double>> gram_grid() { return sample_grid(domain, 10, 24, 20, 0.3); }

}  // namespace

TEST(BasisElement, LabelsAndExclusion) {
  EXPECT_EQ(BasisElement::T(2, 1, Sign::plus, Sign::minus).label(), "T(2,1,+,-)");
  EXPECT_EQ(BasisElement::W(-1, Sign::minus).label(), "W(-1,-)");
  EXPECT_EQ(BasisElement::one().e3().label(), "1*e3");
  EXPECT_THROW(BasisElement::T(1, 0, Sign::plus, Sign::plus), DomainError);
  EXPECT_THROW(BasisElement::T0(0, Sign::minus), DomainError);
  EXPECT_THROW(check_primed_basis({BasisElement::one(), excluded_with_one}), DomainError);
  EXPECT_NO_THROW(check_primed_basis({BasisElement::one(), BasisElement::T(3, 0, Sign::plus, Sign::plus)}));
  const auto primed = truncated_basis(3, 2, 3, true, false);
  EXPECT_EQ(std::find(primed.begin(), primed.end(), excluded_with_one), primed.end());
}

TEST(SeriesExpansion, EvaluateExamples) {
  const CartesianPoint<double> x{0.1, 1.2, 0.3};
  EXPECT_EQ(evaluate_series(SeriesExpansion{}, x), Quaternion<double>{});
  SeriesExpansion one;
  one.add(BasisElement::one(), 3.5);
  EXPECT_EQ(evaluate_series(one, x), (Quaternion<double>{3.5, 0, 0, 0}));
  // e1 + e1 e3 = e1 - e2.
  SeriesExpansion pair;
  pair.add(BasisElement::W(0, Sign::plus), 1.0);
  pair.add(BasisElement::W(0, Sign::plus).e3(), 1.0);
  EXPECT_EQ(evaluate_series(pair, x), (Quaternion<double>{0, 1, -1, 0}));
  EXPECT_THROW(pair.add(BasisElement::W(0, Sign::plus), 2.0), DomainError);
}

TEST(SeriesExpansion, JsonRoundTrip) {
  SeriesExpansion s = known_expansion_x0(5);
  s.add(BasisElement::W(-1, Sign::minus).e3(), 0.125);
  const SeriesExpansion back = series_from_json(nlohmann::json::parse(to_json(s).dump()));
  ASSERT_EQ(back.terms.size(), s.terms.size());
  EXPECT_EQ(back.scale, s.scale);
  for (std::size_t i = 0; i < s.terms.size(); ++i) {
    EXPECT_EQ(back.terms[i].element, s.terms[i].element);
    EXPECT_EQ(back.terms[i].coefficient, s.terms[i].coefficient);
    EXPECT_EQ(back.terms[i].exact, s.terms[i].exact);
  }
  EXPECT_EQ(to_json(s)["schema_version"], series_schema_version);
  nlohmann::json bad = to_json(s);
  bad["schema_version"] = 99;
  EXPECT_THROW(series_from_json(bad), DomainError);
}

TEST(KnownExpansions, OneAndX0) {
  const SeriesEvaluator one(known_expansion_one(40), domain);
  const SeriesEvaluator x0(known_expansion_x0(40), domain);
  double worst_one = 0, worst_x0 = 0;
  for (const auto& node : check_grid()) {
    worst_one = std::max(worst_one, (one(node.x) - Quaternion<double>{1, 0, 0, 0}).norm());
    worst_x0 = std::max(worst_x0, (x0(node.x) - Quaternion<double>{node.x.x0, 0, 0, 0}).norm());
  }
  EXPECT_LT(worst_one, 1e-6);
  EXPECT_LT(worst_x0, 1e-6);
}

TEST(KnownExpansions, OneThroughExactMonogenics) {
  const SeriesEvaluator one(known_expansion_one_in_T(40), domain);
  double worst = 0;
  for (const auto& node : check_grid()) worst = std::max(worst, (one(node.x) - Quaternion<double>{1, 0, 0, 0}).norm());
  EXPECT_LT(worst, 1e-5);
}

TEST(MonogenicConstant, Examples) {
  const auto five = expand_monogenic_constant([](const CartesianPoint<double>&) { return 5.0; }, 4);
  EXPECT_NEAR(five.a0, 5.0, 1e-12);
  for (const auto& [key, value] : five.a) EXPECT_NEAR(value, 0.0, 1e-12);

  const auto w2 = expand_monogenic_constant([](const CartesianPoint<double>& x) { return eval_W(2, Sign::plus, x); }, 4);
  for (const auto& [key, value] : w2.a) EXPECT_NEAR(value, (key == std::pair{2, Sign::plus}) ? 1.0 : 0.0, 1e-10);

  auto mixed = [](const CartesianPoint<double>& x) {
    return eval_W(-1, Sign::minus, x) + 2.0 * eval_W(0, Sign::plus, x);
  };
  const auto c = expand_monogenic_constant(mixed, 4, 1.2);
  EXPECT_NEAR(c.coefficient(-1, Sign::minus), 1.0, 1e-10);
  EXPECT_NEAR(c.coefficient(0, Sign::plus), 2.0, 1e-10);
  EXPECT_NEAR(c.coefficient(1, Sign::plus), 0.0, 1e-10);

  EXPECT_THROW(expand_monogenic_constant([](const CartesianPoint<double>& x) { return x.x1; }, 2), DomainError);
}

TEST(Gram, SymmetricPositiveDefinite) {
  const auto basis = truncated_basis(2, 1, 2, false, false);
  const SampledBasis sampled(ElementEvaluator(basis, domain), gram_grid());
  const Eigen::MatrixXd G = sampled.gram();
  const GramSpectrum spectrum = gram_spectrum(G);
  EXPECT_LT(spectrum.symmetry_error, 1e-14 * G.cwiseAbs().maxCoeff());
  EXPECT_GT(G.diagonal().minCoeff(), 0);
  EXPECT_GT(spectrum.min_eigenvalue, 0);
  EXPECT_LT(spectrum.condition, 1e12);
}

TEST(Gram, ThreadCountDoesNotChangeValues) {
  const auto basis = truncated_basis(2, 1, 1, false, false);
  const ElementEvaluator ev(basis, domain);
  const auto grid = sample_grid(domain, 4, 8, 6, 0.3);
  const Eigen::MatrixXd a = SampledBasis(ev, grid, 1).gram();
  const Eigen::MatrixXd b = SampledBasis(ev, grid, 3).gram();
  EXPECT_EQ((a - b).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Project, RecoversPlantedCoefficients) {
  const auto basis = truncated_basis(3, 2, 2, false, false);
  const ElementEvaluator ev(basis, domain);
  const SampledBasis sampled(ev, gram_grid());
  SeriesExpansion planted;
  planted.add(BasisElement::T(2, 1, Sign::plus, Sign::plus), 2.0);
  planted.add(BasisElement::W(1, Sign::minus), 3.0);
  const SeriesEvaluator f(planted, domain);
  const Projection p = project(f, sampled);
  EXPECT_LT(p.residual, 1e-6);
  for (const auto& e : basis) EXPECT_NEAR(p.series.coefficient(e), planted.coefficient(e), 1e-6) << e.label();
}

TEST(Project, ExactDerivativeConvergesWithTruncation) {
  const ExactMonogenic f = ExactMonogenic::derivative_of({{HarmonicIndex(3, 0, Sign::plus, Sign::plus), Rational(1)}});
  double previous = std::numeric_limits<double>::infinity();
  const auto grid = gram_grid();
  for (int n_max = 1; n_max <= 4; ++n_max) {
    std::vector<BasisElement> basis;
    for (int n = 1; n <= n_max; ++n)
      for (Sign nu : {Sign::plus, Sign::minus})
        if (is_valid_T(n, 0, nu, Sign::plus)) basis.push_back(BasisElement::T(n, 0, nu, Sign::plus));
    const Projection p = project(f, SampledBasis(ElementEvaluator(basis, domain), grid));
    EXPECT_LE(p.residual, previous * (1 + 1e-12) + 1e-14) << n_max;
    previous = p.residual;
  }
  EXPECT_LT(previous, 1e-8);
}

TEST(Project, CohomologyObstruction) {
  const auto grid = gram_grid();
  auto W = [](const CartesianPoint<double>& x) { return eval_W(-1, Sign::minus, x); };
  std::vector<BasisElement> exact_only;
  for (const auto& e : truncated_basis(3, 2, -1, false, false)) {
    if (e.kind == ElementKind::T) exact_only.push_back(e);
  }
  const Projection without = project(W, SampledBasis(ElementEvaluator(exact_only, domain), grid));
  EXPECT_GT(without.relative_residual, 0.1);
  exact_only.push_back(BasisElement::W(-1, Sign::minus));
  const Projection with = project(W, SampledBasis(ElementEvaluator(exact_only, domain), grid));
  EXPECT_LT(with.residual, 1e-8);
}

TEST(Project, RefusesIllConditionedBasis) {
  std::vector<BasisElement> basis{BasisElement::one(), BasisElement::W(0, Sign::plus), BasisElement::W(0, Sign::plus).e3()};
  // W(0,-) e3 = W(0,+) = e1 repeats an element already present.
  basis.push_back(BasisElement::W(0, Sign::minus).e3());
  const SampledBasis sampled(ElementEvaluator(basis, domain), sample_grid(domain, 3, 4, 4, 0.3));
  EXPECT_THROW(project([](const CartesianPoint<double>&) { return 1.0; }, sampled), IllConditionedError);
}

TEST(Project, Idempotent) {
  const auto basis = truncated_basis(2, 1, 1, true, false);
  const SampledBasis sampled(ElementEvaluator(basis, domain), gram_grid());
  SeriesExpansion s;
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  for (const auto& e : basis) s.add(e, u(rng));
  const Projection p = project(SeriesEvaluator(s, domain), sampled);
  for (const auto& e : basis) EXPECT_NEAR(p.series.coefficient(e), s.coefficient(e), 1e-8) << e.label();
}
