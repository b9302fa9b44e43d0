#pragma once

// Starred harmonics I*_{n,m} = sum_k i*^n_{k,m} I_{k,m}, chosen so that
// d/dx0 raises the index: d/dx0 I*^{+}_n = kappa^n_{n+1,m} I*^{-}_{n+1}.
// The change of basis is lower unitriangular and kept in exact rationals.

#include <cmath>
#include <concepts>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "toroidal/errors.hpp"
#include "toroidal/harmonics.hpp"
#include "toroidal/rational.hpp"

namespace toroidal {

// Lower unitriangular matrix; rows[n][k] for 0 <= k <= n <= n_max.
struct TriangularMatrix {
  int m = 0;
  int n_max = 0;
  std::vector<std::vector<Rational>> rows;

  const Rational& operator()(int n, int k) const { return rows.at(n).at(k); }
  Rational& operator()(int n, int k) { return rows.at(n).at(k); }
  bool unit_lower_triangular() const {
    for (int n = 0; n <= n_max; ++n) {
      if (static_cast<int>(rows[n].size()) != n + 1 || rows[n][n] != 1) return false;
    }
    return true;
  }
};

// i*^n_{k,m}: I*_n in terms of I_k.
struct StarMatrix : TriangularMatrix {};
// i^n_{k,m}: I_n in terms of I*_k.
struct InverseStarMatrix : TriangularMatrix {};

// Row n from row n-1: matching the coefficients of d/dx0 I*_{n-1} with
// kappa^{n-1}_{n,m} I*_n gives
//   i*^n_k = sum_j kappa^j_{k,m} i*^{n-1}_j / kappa^{n-1}_{n,m}.
inline StarMatrix star_matrix(int m, int n_max) {
  if (m < 0 || n_max < 0) throw DomainError("star_matrix: m and n_max must be non-negative");
  StarMatrix s;
  s.m = m;
  s.n_max = n_max;
  s.rows.push_back({Rational(1)});
  for (int n = 1; n <= n_max; ++n) {
    const Rational pivot = kappa(n, n - 1, m);
    if (pivot == 0) throw DomainError("star_matrix: zero pivot at n=" + std::to_string(n) + ", m=" + std::to_string(m));
    std::vector<Rational> row(n + 1);
    const auto& prev = s.rows[n - 1];
    for (int k = 0; k < n; ++k) {
      Rational sum = 0;
      for (int j = std::max(k - 1, 0); j <= std::min(k + 1, n - 1); ++j) sum += kappa(k, j, m) * prev[j];
      row[k] = sum / pivot;
    }
    row[n] = 1;
    s.rows.push_back(std::move(row));
  }
  return s;
}

// Back substitution: i^n_n = 1, i^n_k = -sum_{j=k+1}^{n} i^n_j i*^j_k.
inline InverseStarMatrix inverse_matrix(const StarMatrix& s) {
  InverseStarMatrix inv;
  inv.m = s.m;
  inv.n_max = s.n_max;
  for (int n = 0; n <= s.n_max; ++n) {
    std::vector<Rational> row(n + 1);
    row[n] = 1;
    for (int k = n - 1; k >= 0; --k) {
      Rational sum = 0;
      for (int j = k + 1; j <= n; ++j) sum += row[j] * s(j, k);
      row[k] = -sum;
    }
    inv.rows.push_back(std::move(row));
  }
  return inv;
}

// Exact product a*b restricted to the common size.
inline TriangularMatrix multiply(const TriangularMatrix& a, const TriangularMatrix& b) {
  const int size = std::min(a.n_max, b.n_max);
  TriangularMatrix out;
  out.m = a.m;
  out.n_max = size;
  for (int n = 0; n <= size; ++n) {
    std::vector<Rational> row(n + 1);
    for (int k = 0; k <= n; ++k) {
      for (int j = k; j <= n; ++j) row[k] += a(n, j) * b(j, k);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

inline bool is_identity(const TriangularMatrix& t) {
  for (int n = 0; n <= t.n_max; ++n) {
    for (int k = 0; k <= n; ++k) {
      if (t(n, k) != (n == k ? 1 : 0)) return false;
    }
  }
  return true;
}

// I*^{nu,mu}_{n,m} as an exact combination of I. Terms whose index names
// the zero function (k = 0 with nu = -) are dropped.
inline HarmonicCombination star_combination(const HarmonicIndex& idx, const StarMatrix& s) {
  if (idx.m != s.m || idx.n > s.n_max) throw DomainError("star_combination: matrix does not cover " + idx.str());
  HarmonicCombination out;
  for (int k = 0; k <= idx.n; ++k) {
    if (s(idx.n, k) != 0 && HarmonicIndex::is_valid(k, idx.m, idx.nu, idx.mu)) {
      out[HarmonicIndex(k, idx.m, idx.nu, idx.mu)] = s(idx.n, k);
    }
  }
  return out;
}

template <std::floating_point Real>
Real eval_I_star(const HarmonicIndex& idx, const StarMatrix& s, const ToroidalPoint<Real>& p) {
  const LinearForm<Real> form(star_combination(idx, s));
  return HarmonicEvaluator<Real>(p, idx.n, idx.m)(form);
}

template <std::floating_point Real>
Real eval_I_star(const HarmonicIndex& idx, const ToroidalPoint<Real>& p) {
  return eval_I_star(idx, star_matrix(idx.m, idx.n), p);
}

struct AppellMismatch {
  int n = 0;  // row whose derivative disagrees
  HarmonicIndex target;
  Rational expected;
  Rational actual;
};

struct AppellReport {
  bool holds = true;
  std::optional<AppellMismatch> first_mismatch;
};

// Checks d/dx0 I*^{nu}_n = nu kappa^n_{n+1,m} I*^{-nu}_{n+1} for 0 <= n < n_max
// as an identity of exact coefficient maps over I.
inline AppellReport reverse_appell_check(const StarMatrix& s, Sign nu = Sign::plus) {
  AppellReport report;
  for (int n = 0; n < s.n_max; ++n) {
    if (!HarmonicIndex::is_valid(n, s.m, nu, Sign::plus)) continue;
    const HarmonicCombination actual = differentiate(Axis::x0, star_combination({n, s.m, nu, Sign::plus}, s));
    HarmonicCombination expected;
    const Rational factor = sign_value(nu) * kappa(n + 1, n, s.m);
    for (const auto& [idx, c] : star_combination({n + 1, s.m, flip(nu), Sign::plus}, s)) expected[idx] = factor * c;
    // Compare over the union of supports, lowest index first.
    HarmonicCombination keys = expected;
    for (const auto& [idx, c] : actual) keys[idx];
    for (const auto& [idx, unused] : keys) {
      const auto a = actual.find(idx);
      const auto e = expected.find(idx);
      const Rational av = a == actual.end() ? Rational(0) : a->second;
      const Rational ev = e == expected.end() ? Rational(0) : e->second;
      if (av != ev) {
        report.holds = false;
        report.first_mismatch = AppellMismatch{n, idx, ev, av};
        return report;
      }
    }
  }
  return report;
}

// Coefficients of
//   1  = sum_k alpha_k I*^{+,+}_{k,0},   alpha_k = (sqrt2/pi) sum_{n=k}^{N} (2 - delta_{0,n}) i^n_k,
//   x0 = sum_k beta_k  I*^{-,+}_{k,0},   beta_k  = (4 sqrt2/pi) sum_{n=k}^{N} n i^n_k,
// truncated at depth N. The sums over n do not converge as N grows; the
// coefficients are meaningful only together with the truncation they
// come from. Exact parts exclude the common factor sqrt2/pi.
template <std::floating_point Real = double>
struct AlphaBeta {
  int depth = 0;
  std::vector<Rational> alpha_exact;
  std::vector<Rational> beta_exact;
  std::vector<Real> alpha;
  std::vector<Real> beta;
  Real scale = 0;  // sqrt2/pi
  // Largest |scale * c_N * i^N_k| over k: the size of the depth-N terms.
  Real alpha_last_term = 0;
  Real beta_last_term = 0;
};

template <std::floating_point Real = double>
AlphaBeta<Real> alpha_beta(int N) {
  if (N < 1) throw DomainError("alpha_beta: depth must be at least 1");
  const InverseStarMatrix inv = inverse_matrix(star_matrix(0, N));
  AlphaBeta<Real> out;
  out.depth = N;
  out.scale = std::sqrt(Real(2)) / std::numbers::pi_v<Real>;
  out.alpha_exact.assign(N + 1, Rational(0));
  out.beta_exact.assign(N + 1, Rational(0));
  for (int n = 0; n <= N; ++n) {
    const Rational a = n == 0 ? 1 : 2;
    const Rational b = 4 * n;
    for (int k = 0; k <= n; ++k) {
      out.alpha_exact[k] += a * inv(n, k);
      out.beta_exact[k] += b * inv(n, k);
    }
  }
  for (int k = 0; k <= N; ++k) {
    out.alpha.push_back(out.scale * to_real<Real>(out.alpha_exact[k]));
    out.beta.push_back(out.scale * to_real<Real>(out.beta_exact[k]));
    out.alpha_last_term = std::max(out.alpha_last_term, std::abs(out.scale * 2 * to_real<Real>(inv(N, k))));
    out.beta_last_term = std::max(out.beta_last_term, std::abs(out.scale * 4 * N * to_real<Real>(inv(N, k))));
  }
  return out;
}

}  // namespace toroidal
