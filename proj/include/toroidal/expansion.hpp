#pragma once

// Finite expansions over the monogenic and harmonic families, L2 inner
// products on sampled grids, least-squares projection, and the known
// expansions of 1 and x0.

#include <Eigen/Dense>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "toroidal/appell.hpp"
#include "toroidal/errors.hpp"
#include "toroidal/geometry.hpp"
#include "toroidal/harmonics.hpp"
#include "toroidal/monogenics.hpp"
#include "toroidal/quaternion.hpp"
#include "toroidal/rational.hpp"

namespace toroidal {

inline constexpr int series_schema_version = 1;

enum class ElementKind { T, T0, W, One, I, IStar };

inline std::string kind_name(ElementKind k) {
  switch (k) {
    case ElementKind::T:
      return "T";
    case ElementKind::T0:
      return "T0";
    case ElementKind::W:
      return "W";
    case ElementKind::One:
      return "1";
    case ElementKind::I:
      return "I";
    case ElementKind::IStar:
      return "Istar";
  }
  return "?";
}

inline ElementKind parse_kind(const std::string& s) {
  for (ElementKind k : {ElementKind::T, ElementKind::T0, ElementKind::W, ElementKind::One, ElementKind::I,
                        ElementKind::IStar}) {
    if (kind_name(k) == s) return k;
  }
  throw DomainError("unknown basis element kind '" + s + "'");
}

// One member of a basis family, optionally multiplied by e3 on the right.
// W uses (m, sign) with sign stored in nu; T0 uses (m, mu).
struct BasisElement {
  ElementKind kind = ElementKind::One;
  int n = 0;
  int m = 0;
  Sign nu = Sign::plus;
  Sign mu = Sign::plus;
  bool times_e3 = false;

  static BasisElement T(int n, int m, Sign nu, Sign mu) {
    if (!is_valid_T(n, m, nu, mu)) throw DomainError("BasisElement: no T with this index");
    return {ElementKind::T, n, m, nu, mu, false};
  }
  static BasisElement T0(int m, Sign mu) {
    if (!HarmonicIndex::is_valid(0, m, Sign::plus, mu)) throw DomainError("BasisElement: no T0 with this index");
    return {ElementKind::T0, 0, m, Sign::plus, mu, false};
  }
  static BasisElement W(int m, Sign sign) { return {ElementKind::W, 0, m, sign, Sign::plus, false}; }
  static BasisElement one() { return {}; }
  static BasisElement I(const HarmonicIndex& idx) { return {ElementKind::I, idx.n, idx.m, idx.nu, idx.mu, false}; }
  static BasisElement IStar(const HarmonicIndex& idx) {
    return {ElementKind::IStar, idx.n, idx.m, idx.nu, idx.mu, false};
  }
  BasisElement e3() const {
    BasisElement out = *this;
    out.times_e3 = !times_e3;
    return out;
  }

  HarmonicIndex harmonic_index() const { return HarmonicIndex(n, m, nu, mu); }

  std::string label() const {
    std::string s;
    switch (kind) {
      case ElementKind::One:
        s = "1";
        break;
      case ElementKind::W:
        s = "W(" + std::to_string(m) + "," + sign_symbol(nu) + ")";
        break;
      case ElementKind::T0:
        s = "T0(" + std::to_string(m) + "," + sign_symbol(mu) + ")";
        break;
      default:
        s = kind_name(kind) + harmonic_index().str();
    }
    return times_e3 ? s + "*e3" : s;
  }

  auto operator<=>(const BasisElement&) const = default;
};

// The T index left out when the constant 1 joins the basis: 1 is a
// combination of T^{+,+}_{k+1,0}, k >= 1, whose lowest member is n = 2.
inline const BasisElement excluded_with_one = BasisElement::T(2, 0, Sign::plus, Sign::plus);

// Rejects a basis that contains both 1 and the excluded T (or their e3
// multiples together).
inline void check_primed_basis(const std::vector<BasisElement>& basis) {
  for (bool e3 : {false, true}) {
    const BasisElement one = e3 ? BasisElement::one().e3() : BasisElement::one();
    const BasisElement excluded = e3 ? excluded_with_one.e3() : excluded_with_one;
    const bool has_one = std::find(basis.begin(), basis.end(), one) != basis.end();
    const bool has_excluded = std::find(basis.begin(), basis.end(), excluded) != basis.end();
    if (has_one && has_excluded) throw DomainError("basis contains 1 together with the excluded " + excluded.label());
  }
}

struct SeriesTerm {
  BasisElement element;
  double coefficient = 0;
  std::optional<Rational> exact;  // when set, coefficient == scale-free value of *exact
};

// sum over terms of scale * coefficient * element.
struct SeriesExpansion {
  std::vector<SeriesTerm> terms;
  double scale = 1;
  std::map<std::string, std::string> metadata;

  void add(const BasisElement& e, double c) {
    if (!std::isfinite(c)) throw DomainError("SeriesExpansion: non-finite coefficient for " + e.label());
    if (find(e)) throw DomainError("SeriesExpansion: duplicate element " + e.label());
    terms.push_back({e, c, std::nullopt});
  }
  void add_exact(const BasisElement& e, const Rational& c) {
    if (find(e)) throw DomainError("SeriesExpansion: duplicate element " + e.label());
    terms.push_back({e, to_real<double>(c), c});
  }
  const SeriesTerm* find(const BasisElement& e) const {
    for (const auto& t : terms) {
      if (t.element == e) return &t;
    }
    return nullptr;
  }
  double coefficient(const BasisElement& e) const {
    const SeriesTerm* t = find(e);
    return t ? scale * t->coefficient : 0.0;
  }
};

inline nlohmann::json to_json(const SeriesExpansion& s) {
  nlohmann::json j;
  j["schema_version"] = series_schema_version;
  j["scale"] = s.scale;
  j["metadata"] = s.metadata;
  j["terms"] = nlohmann::json::array();
  for (const auto& t : s.terms) {
    nlohmann::json e{{"kind", kind_name(t.element.kind)},
                     {"n", t.element.n},
                     {"m", t.element.m},
                     {"nu", std::string(1, sign_symbol(t.element.nu))},
                     {"mu", std::string(1, sign_symbol(t.element.mu))},
                     {"times_e3", t.element.times_e3},
                     {"label", t.element.label()},
                     {"coefficient", t.coefficient}};
    if (t.exact) e["exact"] = to_fraction_string(*t.exact);
    j["terms"].push_back(e);
  }
  return j;
}

inline SeriesExpansion series_from_json(const nlohmann::json& j) {
  if (j.value("schema_version", -1) != series_schema_version) throw DomainError("series record: unsupported schema version");
  SeriesExpansion s;
  s.scale = j.at("scale").get<double>();
  s.metadata = j.value("metadata", std::map<std::string, std::string>{});
  for (const auto& e : j.at("terms")) {
    BasisElement b{parse_kind(e.at("kind")), e.at("n"), e.at("m"), parse_sign(e.at("nu")), parse_sign(e.at("mu")),
                   e.at("times_e3")};
    if (e.contains("exact")) {
      s.add_exact(b, parse_fraction(e.at("exact")));
    } else {
      s.add(b, e.at("coefficient").get<double>());
    }
  }
  return s;
}

// Evaluates a list of basis elements at points. Star matrices, exact
// monogenics and T0 completions are prepared once; harmonic-backed
// elements share one Legendre table per point.
class ElementEvaluator {
 public:
  ElementEvaluator(std::vector<BasisElement> basis, TorusDomain<double> domain, double tol = 1e-10)
      : basis_(std::move(basis)), domain_(domain) {
    std::map<int, int> depth;  // star-matrix depth per m
    for (const auto& e : basis_) {
      if (e.kind == ElementKind::T) depth[e.m] = std::max(depth[e.m], e.n - 1);
      if (e.kind == ElementKind::IStar) depth[e.m] = std::max(depth[e.m], e.n);
    }
    for (const auto& [m, n] : depth) stars_.emplace(m, star_matrix(m, n));
    for (const auto& e : basis_) {
      Prepared p;
      switch (e.kind) {
        case ElementKind::T: {
          const ExactMonogenic T = exact_T(HarmonicIndex(e.n, e.m, e.nu, e.mu), stars_.at(e.m));
          for (int i = 0; i < 3; ++i) p.forms[i] = LinearForm<double>(T.parts()[i]);
          break;
        }
        case ElementKind::I:
          p.forms[0] = LinearForm<double>(HarmonicCombination{{e.harmonic_index(), Rational(1)}});
          break;
        case ElementKind::IStar:
          p.forms[0] = LinearForm<double>(star_combination(e.harmonic_index(), stars_.at(e.m)));
          break;
        case ElementKind::T0:
          p.t0 = std::make_shared<T0<double>>(e.m, e.mu, domain_, tol);
          break;
        default:
          break;
      }
      for (const auto& f : p.forms) {
        n_max_ = std::max(n_max_, f.n_max);
        m_max_ = std::max(m_max_, f.m_max);
        harmonic_ = harmonic_ || !f.terms.empty();
      }
      prepared_.push_back(std::move(p));
    }
  }

  const std::vector<BasisElement>& basis() const { return basis_; }
  const TorusDomain<double>& domain() const { return domain_; }
  std::size_t size() const { return basis_.size(); }

  std::vector<Quaternion<double>> operator()(const CartesianPoint<double>& x) const {
    std::optional<HarmonicEvaluator<double>> ev;
    if (harmonic_) ev.emplace(x, n_max_, m_max_);
    std::vector<Quaternion<double>> out;
    out.reserve(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const BasisElement& e = basis_[i];
      const Prepared& p = prepared_[i];
      Quaternion<double> v;
      switch (e.kind) {
        case ElementKind::One:
          v = {1, 0, 0, 0};
          break;
        case ElementKind::W:
          v = eval_W(e.m, e.nu, x);
          break;
        case ElementKind::T0:
          v = (*p.t0)(x);
          break;
        default:
          v = {(*ev)(p.forms[0]), (*ev)(p.forms[1]), (*ev)(p.forms[2]), 0};
      }
      out.push_back(e.times_e3 ? v * Quaternion<double>::e(3) : v);
    }
    return out;
  }

 private:
  struct Prepared {
    std::array<LinearForm<double>, 3> forms;
    std::shared_ptr<T0<double>> t0;
  };
  std::vector<BasisElement> basis_;
  TorusDomain<double> domain_;
  std::map<int, StarMatrix> stars_;
  std::vector<Prepared> prepared_;
  int n_max_ = 0;
  int m_max_ = 0;
  bool harmonic_ = false;
};

// Terms with exact coefficients on T, I and I* are first summed in
// rational arithmetic into harmonic combinations, separately for the
// plain and the e3 parts, and evaluated once; this avoids the
// cancellation between large coefficients of truncated series. Other
// terms are evaluated one by one.
class SeriesEvaluator {
 public:
  SeriesEvaluator(const SeriesExpansion& s, TorusDomain<double> domain, double tol = 1e-10) : scale_(s.scale) {
    std::map<int, int> depth;
    for (const auto& t : s.terms) {
      if (t.element.kind == ElementKind::T) depth[t.element.m] = std::max(depth[t.element.m], t.element.n - 1);
      if (t.element.kind == ElementKind::IStar) depth[t.element.m] = std::max(depth[t.element.m], t.element.n);
    }
    std::map<int, StarMatrix> stars;
    for (const auto& [m, n] : depth) stars.emplace(m, star_matrix(m, n));
    std::array<ExactMonogenic, 2> folded;
    std::vector<BasisElement> rest;
    for (const auto& t : s.terms) {
      const BasisElement& e = t.element;
      const bool foldable = t.exact && (e.kind == ElementKind::T || e.kind == ElementKind::I || e.kind == ElementKind::IStar);
      if (!foldable) {
        rest.push_back(e);
        rest_coefficients_.push_back(t.coefficient);
        continue;
      }
      ExactMonogenic piece;
      if (e.kind == ElementKind::T) {
        piece = exact_T(e.harmonic_index(), stars.at(e.m));
      } else {
        const HarmonicCombination h = e.kind == ElementKind::I ? HarmonicCombination{{e.harmonic_index(), Rational(1)}}
                                                               : star_combination(e.harmonic_index(), stars.at(e.m));
        piece = ExactMonogenic({h, {}, {}});
      }
      folded[e.times_e3 ? 1 : 0].add(piece, *t.exact);
    }
    for (int i = 0; i < 2; ++i) {
      for (int c = 0; c < 3; ++c) {
        forms_[i][c] = LinearForm<double>(folded[i].parts()[c]);
        n_max_ = std::max(n_max_, forms_[i][c].n_max);
        m_max_ = std::max(m_max_, forms_[i][c].m_max);
        harmonic_ = harmonic_ || !forms_[i][c].terms.empty();
      }
    }
    if (!rest.empty()) rest_.emplace(std::move(rest), domain, tol);
  }

  Quaternion<double> operator()(const CartesianPoint<double>& x) const {
    Quaternion<double> out;
    if (harmonic_) {
      const HarmonicEvaluator<double> ev(x, n_max_, m_max_);
      const Quaternion<double> plain{ev(forms_[0][0]), ev(forms_[0][1]), ev(forms_[0][2]), 0};
      const Quaternion<double> rotated{ev(forms_[1][0]), ev(forms_[1][1]), ev(forms_[1][2]), 0};
      out = plain + rotated * Quaternion<double>::e(3);
    }
    if (rest_) {
      const auto values = (*rest_)(x);
      for (std::size_t i = 0; i < values.size(); ++i) out += rest_coefficients_[i] * values[i];
    }
    return scale_ * out;
  }

 private:
  double scale_;
  std::array<std::array<LinearForm<double>, 3>, 2> forms_;
  int n_max_ = 0;
  int m_max_ = 0;
  bool harmonic_ = false;
  std::optional<ElementEvaluator> rest_;
  std::vector<double> rest_coefficients_;
};

inline Quaternion<double> evaluate_series(const SeriesExpansion& s, const CartesianPoint<double>& x,
                                          const TorusDomain<double>& domain = TorusDomain<double>(1.0)) {
  if (s.terms.empty()) return {};
  return SeriesEvaluator(s, domain)(x);
}

// Basis values on a grid, sqrt(weight)-scaled, as a (4 * nodes) x size
// matrix. Rows are filled in fixed node blocks by worker threads; each
// entry depends on its node only, so the result does not depend on the
// thread count.
class SampledBasis {
 public:
  SampledBasis(const ElementEvaluator& evaluator, const std::vector<GridNode<double>>& grid, unsigned threads = 0)
      : basis_(evaluator.basis()), grid_(grid) {
    const std::size_t rows = 4 * grid.size();
    values_.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(basis_.size()));
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t block = (grid.size() + threads - 1) / threads;
    auto fill = [&](std::size_t lo, std::size_t hi) {
      for (std::size_t k = lo; k < hi; ++k) {
        const double w = std::sqrt(grid[k].weight);
        const auto v = evaluator(grid[k].x);
        for (std::size_t j = 0; j < v.size(); ++j) {
          values_(4 * k, j) = w * v[j].a0;
          values_(4 * k + 1, j) = w * v[j].a1;
          values_(4 * k + 2, j) = w * v[j].a2;
          values_(4 * k + 3, j) = w * v[j].a3;
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) {
      const std::size_t lo = std::min(grid.size(), t * block), hi = std::min(grid.size(), (t + 1) * block);
      if (lo < hi) pool.emplace_back(fill, lo, hi);
    }
    fill(0, std::min(grid.size(), block));
    for (auto& th : pool) th.join();
  }

  const std::vector<BasisElement>& basis() const { return basis_; }
  const std::vector<GridNode<double>>& grid() const { return grid_; }
  const Eigen::MatrixXd& weighted_values() const { return values_; }

  Eigen::MatrixXd gram() const { return values_.transpose() * values_; }

  // sqrt(weight)-scaled samples of a field on this grid.
  template <class F>
  Eigen::VectorXd sample(const F& f) const {
    Eigen::VectorXd out(4 * static_cast<Eigen::Index>(grid_.size()));
    for (std::size_t k = 0; k < grid_.size(); ++k) {
      const double w = std::sqrt(grid_[k].weight);
      const Quaternion<double> v = as_quaternion<double>(f(grid_[k].x));
      out(4 * k) = w * v.a0;
      out(4 * k + 1) = w * v.a1;
      out(4 * k + 2) = w * v.a2;
      out(4 * k + 3) = w * v.a3;
    }
    return out;
  }

 private:
  std::vector<BasisElement> basis_;
  std::vector<GridNode<double>> grid_;
  Eigen::MatrixXd values_;
};

struct GramSpectrum {
  double min_eigenvalue = 0;
  double max_eigenvalue = 0;
  double condition = std::numeric_limits<double>::infinity();  // of the Jacobi-scaled matrix
  double symmetry_error = 0;
};

inline GramSpectrum gram_spectrum(const Eigen::MatrixXd& G) {
  GramSpectrum out;
  out.symmetry_error = (G - G.transpose()).cwiseAbs().maxCoeff();
  const Eigen::VectorXd d = G.diagonal().cwiseMax(std::numeric_limits<double>::min()).cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd scaled = d.asDiagonal() * G * d.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> raw(G, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scaled, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = raw.eigenvalues().minCoeff();
  out.max_eigenvalue = raw.eigenvalues().maxCoeff();
  const double lo = eig.eigenvalues().minCoeff();
  if (lo > 0) out.condition = eig.eigenvalues().maxCoeff() / lo;
  return out;
}

struct Projection {
  SeriesExpansion series;
  double residual = 0;           // L2 norm of f minus the projection
  double relative_residual = 0;  // residual / L2 norm of f
  double condition = 0;          // of the Jacobi-scaled Gram matrix
};

// Least squares through the normal equations: Jacobi scaling, a
// condition-number cap, then Cholesky.
template <class F>
Projection project(const F& f, const SampledBasis& sampled, double condition_cap = 1e12) {
  const Eigen::MatrixXd& A = sampled.weighted_values();
  const Eigen::VectorXd y = sampled.sample(f);
  const Eigen::MatrixXd G = A.transpose() * A;
  const GramSpectrum spectrum = gram_spectrum(G);
  if (!(spectrum.condition <= condition_cap)) {
    throw IllConditionedError("project: Gram matrix condition " + std::to_string(spectrum.condition) +
                                  " exceeds cap " + std::to_string(condition_cap),
                              spectrum.condition);
  }
  const Eigen::VectorXd d = G.diagonal().cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd scaled = d.asDiagonal() * G * d.asDiagonal();
  const Eigen::LLT<Eigen::MatrixXd> llt(scaled);
  if (llt.info() != Eigen::Success) throw IllConditionedError("project: Gram matrix is not positive definite", spectrum.condition);
  const Eigen::VectorXd c = d.asDiagonal() * llt.solve(d.asDiagonal() * (A.transpose() * y));
  Projection out;
  out.condition = spectrum.condition;
  out.residual = (y - A * c).norm();
  const double norm = y.norm();
  out.relative_residual = norm > 0 ? out.residual / norm : out.residual;
  for (std::size_t j = 0; j < sampled.basis().size(); ++j) out.series.add(sampled.basis()[j], c(static_cast<Eigen::Index>(j)));
  out.series.metadata["residual"] = std::to_string(out.residual);
  out.series.metadata["condition"] = std::to_string(out.condition);
  out.series.metadata["nodes"] = std::to_string(sampled.grid().size());
  return out;
}

struct MonogenicConstantExpansion {
  double a0 = 0;
  std::map<std::pair<int, Sign>, double> a;  // coefficient of W^{sign}_m

  double coefficient(int m, Sign s) const {
    const auto it = a.find({m, s});
    return it == a.end() ? 0.0 : it->second;
  }
};

// phi = a0 + sum_m (a^+_m W^+_m + a^-_m W^-_m). Since W^+_m contributes z^m
// and W^-_m contributes -i z^m to phi1 - i phi2 (z = x1 + i x2), the
// coefficients are the Laurent coefficients c_m of phi1 - i phi2 on a
// circle in the plane x0 = 0: a^+_m = Re c_m, a^-_m = -Im c_m.
template <class F>
MonogenicConstantExpansion expand_monogenic_constant(const F& phi, int M, double radius = 1.0, int n_nodes = 128,
                                                     double tol = 1e-8) {
  if (M < 0 || n_nodes < 2 * M + 2 || !(radius > 0)) throw DomainError("expand_monogenic_constant: bad truncation");
  constexpr double pi = std::numbers::pi;
  std::vector<std::complex<double>> g(n_nodes);
  std::vector<double> scalar(n_nodes);
  for (int j = 0; j < n_nodes; ++j) {
    const double t = 2 * pi * j / n_nodes;
    const Quaternion<double> v = as_quaternion<double>(phi(CartesianPoint<double>{0, radius * std::cos(t), radius * std::sin(t)}));
    g[j] = {v.a1, -v.a2};
    scalar[j] = v.a0;
  }
  MonogenicConstantExpansion out;
  for (double s : scalar) out.a0 += s / n_nodes;
  // A monogenic constant has a real constant scalar part; sample off the
  // circle as well.
  double spread = 0;
  for (double s : scalar) spread = std::max(spread, std::abs(s - out.a0));
  for (const CartesianPoint<double> x : {CartesianPoint<double>{0.1, 0.3, 1.1}, CartesianPoint<double>{-0.2, -0.9, 0.5}}) {
    spread = std::max(spread, std::abs(as_quaternion<double>(phi(x)).a0 - out.a0));
  }
  if (spread > tol * std::max(1.0, std::abs(out.a0))) {
    throw DomainError("expand_monogenic_constant: scalar part is not constant");
  }
  for (int m = -M; m <= M; ++m) {
    std::complex<double> c = 0;
    for (int j = 0; j < n_nodes; ++j) c += g[j] * std::polar(1.0, -m * 2 * pi * j / n_nodes);
    c /= n_nodes * std::pow(radius, m);
    out.a[{m, Sign::plus}] = c.real();
    out.a[{m, Sign::minus}] = -c.imag();
  }
  return out;
}

// 1 = (sqrt2/pi) sum_{n=0}^{N} (2 - delta_{0,n}) I^{+,+}_{n,0}.
inline SeriesExpansion known_expansion_one(int N) {
  if (N < 1) throw DomainError("known_expansion_one: N must be at least 1");
  SeriesExpansion s;
  s.scale = std::sqrt(2.0) / std::numbers::pi;
  s.metadata["function"] = "1";
  s.metadata["truncation"] = std::to_string(N);
  for (int n = 0; n <= N; ++n) s.add_exact(BasisElement::I({n, 0, Sign::plus, Sign::plus}), Rational(n == 0 ? 1 : 2));
  return s;
}

// x0 = (4 sqrt2/pi) sum_{n=1}^{N} n I^{-,+}_{n,0}.
inline SeriesExpansion known_expansion_x0(int N) {
  if (N < 1) throw DomainError("known_expansion_x0: N must be at least 1");
  SeriesExpansion s;
  s.scale = std::sqrt(2.0) / std::numbers::pi;
  s.metadata["function"] = "x0";
  s.metadata["truncation"] = std::to_string(N);
  for (int n = 1; n <= N; ++n) s.add_exact(BasisElement::I({n, 0, Sign::minus, Sign::plus}), Rational(4 * n));
  return s;
}

// 1 = d x0 = sum_{k=1}^{N} beta_k T^{+,+}_{k+1,0}, with beta from the x0
// series at depth N (the k = 0 term multiplies the zero function).
inline SeriesExpansion known_expansion_one_in_T(int N) {
  const AlphaBeta<double> ab = alpha_beta<double>(N);
  SeriesExpansion s;
  s.scale = ab.scale;
  s.metadata["function"] = "1";
  s.metadata["family"] = "T";
  s.metadata["truncation"] = std::to_string(N);
  for (int k = 1; k <= N; ++k) s.add_exact(BasisElement::T(k + 1, 0, Sign::plus, Sign::plus), ab.beta_exact[k]);
  return s;
}

// Truncations of the two bases.
//   A-valued: T (1 <= n <= n_max, m <= m_max), T0 (m <= m_max), W (|m| <= w_max).
//   H-valued (with_one): the same with the excluded T dropped and 1 added,
//   then the T, T0 and 1 parts again multiplied by e3. W e3 = -+W^-+ is
//   already in the W family.
inline std::vector<BasisElement> truncated_basis(int n_max, int m_max, int w_max, bool with_one, bool quaternionic) {
  std::vector<BasisElement> core;
  for (int m = 0; m <= m_max; ++m) {
    for (Sign mu : {Sign::plus, Sign::minus}) {
      if (HarmonicIndex::is_valid(0, m, Sign::plus, mu)) core.push_back(BasisElement::T0(m, mu));
    }
  }
  for (int n = 1; n <= n_max; ++n) {
    for (int m = 0; m <= m_max; ++m) {
      for (Sign nu : {Sign::plus, Sign::minus}) {
        for (Sign mu : {Sign::plus, Sign::minus}) {
          if (!is_valid_T(n, m, nu, mu)) continue;
          const BasisElement e = BasisElement::T(n, m, nu, mu);
          if (with_one && e == excluded_with_one) continue;
          core.push_back(e);
        }
      }
    }
  }
  if (with_one) core.push_back(BasisElement::one());
  std::vector<BasisElement> out = core;
  for (int m = -w_max; m <= w_max; ++m) {
    for (Sign s : {Sign::plus, Sign::minus}) out.push_back(BasisElement::W(m, s));
  }
  if (quaternionic) {
    for (const auto& e : core) out.push_back(e.e3());
  }
  if (with_one) check_primed_basis(out);
  return out;
}

}  // namespace toroidal
