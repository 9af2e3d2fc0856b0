// Shared fixtures and independent oracles for the unit tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ldc/lp.hpp"
#include "ldc/model.hpp"
#include "ldc/workbench/io.hpp"

namespace ldc::test {

inline std::string data(const std::string& name) { return std::string(LDC_DATA_DIR) + "/" + name; }

inline Problem load(const std::string& json_name, const std::string& csv_name) {
  return workbench::load_problem(data(json_name), data(csv_name)).problem;
}

/// Two-criteria interval LDC from per-interval singleton capacities (w_M, w_Ph).
inline MobiusCapacity pair_capacity(double wm, double wph) {
  return MobiusCapacity(2, CapacityKind::two_additive, {wm, wph, 1.0 - wm - wph});
}

/// Random normalized monotone capacity: mu(E) = max_{B subset E} u(B), scaled by mu(G).
inline std::vector<double> random_set_function(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> mu(size, 0.0);
  for (Subset s = 1; s < size; ++s) mu[s] = u(rng);
  for (int i = 0; i < n; ++i)
    for (Subset s = 0; s < size; ++s)
      if (contains(s, i)) mu[s] = std::max(mu[s], mu[s ^ singleton(i)]);
  const double top = mu[size - 1];
  for (double& v : mu) v /= top;
  return mu;
}

inline MobiusCapacity random_general(int n, std::mt19937_64& rng) {
  const auto mu = random_set_function(n, rng);
  return MobiusCapacity::from_set_function(n, CapacityKind::general, mu);
}

/// Random normalized monotone 2-additive capacity by rejection.
inline MobiusCapacity random_two_additive(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    std::vector<double> c;
    for (int i = 0; i < n; ++i) c.push_back(u(rng));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) c.push_back(u(rng) - 0.5);
    double total = 0.0;
    for (double v : c) total += v;
    if (total <= 0.1) continue;
    for (double& v : c) v /= total;
    MobiusCapacity m(n, CapacityKind::two_additive, c);
    if (m.monotone()) return m;
  }
}

inline MobiusCapacity random_capacity(int n, CapacityKind kind, std::mt19937_64& rng) {
  return kind == CapacityKind::general ? random_general(n, rng) : random_two_additive(n, rng);
}

inline Scale random_scale(int p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> a{0.0};
  for (int r = 0; r < p; ++r) a.push_back(a.back() + 0.2 + u(rng));
  return Scale(a);
}

inline LevelDependentCapacity random_ldc(LdcVariant variant, int n, int p, CapacityKind kind, std::mt19937_64& rng) {
  Scale sc = random_scale(p, rng);
  std::vector<MobiusCapacity> members;
  const int count = variant == LdcVariant::interval ? p : p + 1;
  for (int k = 0; k < count; ++k) members.push_back(random_capacity(n, kind, rng));
  return LevelDependentCapacity(variant, sc, members);
}

inline std::vector<double> random_point(int n, const Scale& sc, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(sc.alpha(), sc.beta());
  std::vector<double> x(n);
  for (double& v : x) v = u(rng);
  return x;
}

inline double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

/// Shapley value from marginal contributions over all coalitions.
inline double brute_shapley(const std::vector<double>& mu, int n, int i) {
  double v = 0.0;
  for (Subset e = 0; e < mu.size(); ++e) {
    if (contains(e, i)) continue;
    const int k = popcount(e);
    v += factorial(n - k - 1) * factorial(k) / factorial(n) * (mu[e | singleton(i)] - mu[e]);
  }
  return v;
}

/// Shapley interaction index from second-order differences.
inline double brute_interaction(const std::vector<double>& mu, int n, int i, int j) {
  double v = 0.0;
  const Subset ij = singleton(i) | singleton(j);
  for (Subset e = 0; e < mu.size(); ++e) {
    if (e & ij) continue;
    const int k = popcount(e);
    v += factorial(n - k - 2) * factorial(k) / factorial(n - 1) *
         (mu[e | ij] - mu[e | singleton(i)] - mu[e | singleton(j)] + mu[e]);
  }
  return v;
}

/// Rank by Gaussian elimination with partial pivoting.
inline std::size_t gaussian_rank(std::vector<std::vector<double>> a, double tol = 1e-9) {
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t best = rank;
    for (std::size_t r = rank; r < a.size(); ++r)
      if (std::abs(a[r][c]) > std::abs(a[best][c])) best = r;
    if (std::abs(a[best][c]) <= tol) continue;
    std::swap(a[best], a[rank]);
    for (std::size_t r = rank + 1; r < a.size(); ++r) {
      const double f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Solves a square system by Gaussian elimination; false when singular.
inline bool gaussian_solve(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = c;
    for (std::size_t r = c; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[best][c])) best = r;
    if (std::abs(a[best][c]) < 1e-10) return false;
    std::swap(a[best], a[c]);
    std::swap(b[best], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  x.resize(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return true;
}

/// Best objective over all vertices of {x >= 0, A x <= b} by solving every square subsystem.
inline std::optional<double> vertex_oracle(const LinearProgram& lp) {
  const std::size_t n = lp.variables;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (const auto& c : lp.constraints) {
    rows.push_back(c.coefficients);
    rhs.push_back(c.rhs);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> r(n, 0.0);
    r[j] = -1.0;
    rows.push_back(r);
    rhs.push_back(0.0);
  }
  std::optional<double> best;
  const std::size_t m = rows.size();
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != n) continue;
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (std::size_t k = 0; k < m; ++k)
      if (mask >> k & 1u) {
        a.push_back(rows[k]);
        b.push_back(rhs[k]);
      }
    std::vector<double> x;
    if (!gaussian_solve(a, b, x)) continue;
    bool ok = true;
    for (std::size_t k = 0; k < m && ok; ++k) {
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) v += rows[k][j] * x[j];
      ok = v <= rhs[k] + 1e-9;
    }
    if (!ok) continue;
    double obj = 0.0;
    for (std::size_t j = 0; j < n; ++j) obj += lp.objective[j] * x[j];
    if (!best || obj > *best) best = obj;
  }
  return best;
}

/// Small bounded LP over x >= 0; every seventh instance is likely infeasible.
inline LinearProgram random_small_lp(int trial, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  const std::size_t n = 2 + trial % 3;
  const std::size_t m = 3 + trial % 4;
  LinearProgram lp(n);
  for (auto& c : lp.objective) c = u(rng);
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<double> row(n);
    for (double& v : row) v = u(rng);
    lp.add(row, LpRelation::less_equal, 0.2 + std::abs(u(rng)) - (trial % 7 == 0 ? 1.0 : 0.0));
  }
  // A bounding row keeps every instance bounded.
  lp.add(std::vector<double>(n, 1.0), LpRelation::less_equal, 5.0);
  for (std::size_t j = 0; j < n; ++j) lp.bound(j, 0, kInfinity);
  return lp;
}

}  // namespace ldc::test
