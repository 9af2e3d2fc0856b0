#include <gtest/gtest.h>

#include <random>

#include "ldc/lp.hpp"
#include "support.hpp"

namespace ldc {
namespace {

TEST(Simplex, TextbookMaximization) {
  LinearProgram lp(2);
  lp.objective = {3, 5};
  lp.add({1, 0}, LpRelation::less_equal, 4);
  lp.add({0, 2}, LpRelation::less_equal, 12);
  lp.add({3, 2}, LpRelation::less_equal, 18);
  lp.bound(0, 0, kInfinity);
  lp.bound(1, 0, kInfinity);
  const auto s = default_solver().solve(lp);
  ASSERT_EQ(s.status, LpStatus::optimal);
  EXPECT_NEAR(s.objective, 36, 1e-9);
  EXPECT_NEAR(s.x[0], 2, 1e-9);
  EXPECT_NEAR(s.x[1], 6, 1e-9);
}

TEST(Simplex, NegativeOptimumWithFreeVariables) {
  // max eps s.t. eps <= w - 0.5, eps <= 0.4 - w.
  LinearProgram lp(2);
  lp.objective = {0, 1};
  lp.add({-1, 1}, LpRelation::less_equal, -0.5);
  lp.add({1, 1}, LpRelation::less_equal, 0.4);
  const auto s = default_solver().solve(lp);
  ASSERT_EQ(s.status, LpStatus::optimal);
  EXPECT_NEAR(s.objective, -0.05, 1e-9);
  EXPECT_NEAR(s.x[0], 0.45, 1e-9);
}

TEST(Simplex, EqualitiesAndGreaterRows) {
  LinearProgram lp(3);
  lp.sense = LpSense::minimize;
  lp.objective = {1, 2, 3};
  lp.add({1, 1, 1}, LpRelation::equal, 1);
  lp.add({0, 1, 1}, LpRelation::greater_equal, 0.5);
  lp.add({1, 1, 1}, LpRelation::equal, 1);  // redundant copy
  for (std::size_t j = 0; j < 3; ++j) lp.bound(j, 0, kInfinity);
  const auto s = default_solver().solve(lp);
  ASSERT_EQ(s.status, LpStatus::optimal);
  EXPECT_NEAR(s.objective, 1.5, 1e-9);
  EXPECT_LE(constraint_violation(lp, s.x), 1e-9);
}

TEST(Simplex, InfeasibleAndUnbounded) {
  LinearProgram infeasible(1);
  infeasible.add({1}, LpRelation::greater_equal, 2);
  infeasible.add({1}, LpRelation::less_equal, 1);
  EXPECT_EQ(default_solver().solve(infeasible).status, LpStatus::infeasible);

  LinearProgram unbounded(2);
  unbounded.objective = {1, 1};
  unbounded.add({1, -1}, LpRelation::less_equal, 1);
  unbounded.bound(0, 0, kInfinity);
  unbounded.bound(1, 0, kInfinity);
  EXPECT_EQ(default_solver().solve(unbounded).status, LpStatus::unbounded);
}

TEST(Simplex, FiniteBoxBounds) {
  LinearProgram lp(2);
  lp.objective = {1, -1};
  lp.bound(0, -2, 3);
  lp.bound(1, -1, 4);
  const auto s = default_solver().solve(lp);
  ASSERT_EQ(s.status, LpStatus::optimal);
  EXPECT_NEAR(s.objective, 4, 1e-9);
}

TEST(Simplex, ReoptimizingWithObjectiveCutKeepsOptimum) {
  LinearProgram lp(3);
  lp.objective = {2, 1, 1};
  lp.add({1, 1, 1}, LpRelation::less_equal, 4);
  lp.add({1, 0, 0}, LpRelation::less_equal, 2);
  for (std::size_t j = 0; j < 3; ++j) lp.bound(j, 0, kInfinity);
  const auto first = default_solver().solve(lp);
  ASSERT_EQ(first.status, LpStatus::optimal);
  lp.add(lp.objective, LpRelation::greater_equal, first.objective);
  lp.objective = {0, 1, 0};
  const auto second = default_solver().solve(lp);
  ASSERT_EQ(second.status, LpStatus::optimal);
  EXPECT_NEAR(second.objective, 2, 1e-9);
  EXPECT_NEAR(2 * second.x[0] + second.x[1] + second.x[2], first.objective, 1e-9);
}

TEST(Simplex, AgreesWithVertexEnumeration) {
  std::mt19937_64 rng(3);
  int solved = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const LinearProgram lp = test::random_small_lp(trial, rng);
    const auto s = default_solver().solve(lp);
    const auto oracle = test::vertex_oracle(lp);
    if (!oracle) {
      EXPECT_EQ(s.status, LpStatus::infeasible);
      continue;
    }
    ASSERT_EQ(s.status, LpStatus::optimal) << "trial " << trial;
    EXPECT_NEAR(s.objective, *oracle, 1e-7) << "trial " << trial;
    EXPECT_LE(constraint_violation(lp, s.x), 1e-7);
    ++solved;
  }
  EXPECT_GT(solved, 50);
}

TEST(Chebyshev, UnitSquare) {
  Polytope p(2);
  p.less_equal({1, 0}, 1);
  p.less_equal({-1, 0}, 0);
  p.less_equal({0, 1}, 1);
  p.less_equal({0, -1}, 0);
  const auto c = chebyshev_center(p);
  EXPECT_NEAR(c.radius, 0.5, 1e-9);
  EXPECT_NEAR(c.point[0], 0.5, 1e-9);
  EXPECT_NEAR(c.point[1], 0.5, 1e-9);
}

TEST(Chebyshev, SimplexSliceUsesAffineHull) {
  // {x >= 0, x1 + x2 + x3 = 1}: inscribed radius within the plane is 1/sqrt(6).
  Polytope p(3);
  for (int j = 0; j < 3; ++j) {
    std::vector<double> r(3, 0.0);
    r[j] = -1;
    p.less_equal(r, 0);
  }
  p.equal({1, 1, 1}, 1);
  const auto c = chebyshev_center(p);
  EXPECT_NEAR(c.radius, 1 / std::sqrt(6.0), 1e-9);
  for (double v : c.point) EXPECT_NEAR(v, 1.0 / 3, 1e-9);
}

TEST(Chebyshev, EmptyAndFlat) {
  Polytope empty(1);
  empty.less_equal({1}, 0);
  empty.less_equal({-1}, -1);
  EXPECT_THROW(chebyshev_center(empty), EmptyPolytopeError);

  Polytope flat(2);
  flat.less_equal({1, 0}, 0);
  flat.less_equal({-1, 0}, 0);
  flat.less_equal({0, 1}, 1);
  flat.less_equal({0, -1}, 0);
  EXPECT_NEAR(chebyshev_center(flat).radius, 0.0, 1e-9);
}

TEST(Nullspace, OrthonormalAndAnnihilating) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + trial % 5;
    const std::size_t m = 1 + trial % 4;
    std::vector<std::vector<double>> e(m, std::vector<double>(n));
    for (auto& row : e)
      for (double& v : row) v = u(rng);
    if (m > 1 && trial % 3 == 0) e[1] = e[0];  // rank deficient
    const auto z = nullspace_basis(e, n);
    ASSERT_EQ(z.rows(), n);
    EXPECT_EQ(z.cols(), n - test::gaussian_rank(e));
    for (std::size_t a = 0; a < z.cols(); ++a) {
      for (std::size_t b = 0; b < z.cols(); ++b) {
        double dot = 0.0;
        for (std::size_t k = 0; k < n; ++k) dot += z(k, a) * z(k, b);
        EXPECT_NEAR(dot, a == b ? 1.0 : 0.0, 1e-10);
      }
      for (const auto& row : e) {
        double dot = 0.0;
        for (std::size_t k = 0; k < n; ++k) dot += row[k] * z(k, a);
        EXPECT_NEAR(dot, 0.0, 1e-10);
      }
    }
  }
}

TEST(Nullspace, ParticularSolution) {
  const std::vector<std::vector<double>> e{{1, 1, 0}, {0, 1, 1}};
  const auto x = particular_solution(e, {1, 2}, 3);
  EXPECT_NEAR(x[0] + x[1], 1, 1e-10);
  EXPECT_NEAR(x[1] + x[2], 2, 1e-10);
  EXPECT_THROW(particular_solution({{1, 1}, {1, 1}}, {0, 1}, 2), EmptyPolytopeError);
}

}  // namespace
}  // namespace ldc
