#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ldc/choquet.hpp"
#include "ldc/elicitation.hpp"
#include "ldc/indices.hpp"
#include "support.hpp"

namespace ldc {
namespace {

/// Random 3-criteria problem on [0, 2] plus the hidden capacity that produced its statements.
struct Synthetic {
  Problem problem;
  LevelDependentCapacity truth;
  std::vector<AltPreference> pool;
};

Synthetic synthetic(std::mt19937_64& rng, std::size_t alternatives = 7) {
  Synthetic s;
  Problem& p = s.problem;
  p.name = "synthetic";
  p.scale = Scale({0, 1, 2});
  p.criteria = {{"c1", ""}, {"c2", ""}, {"c3", ""}};
  std::vector<std::string> ids;
  Matrix<double> values(alternatives, 3);
  std::uniform_real_distribution<double> u(0, 2);
  for (std::size_t a = 0; a < alternatives; ++a) {
    ids.push_back("a" + std::to_string(a));
    for (std::size_t i = 0; i < 3; ++i) values(a, i) = u(rng);
  }
  // One alternative dominating another guarantees a dominance pair.
  for (std::size_t i = 0; i < 3; ++i) values(1, i) = std::min(2.0, values(0, i) + 0.1);
  p.evaluations = EvaluationMatrix(ids, {"c1", "c2", "c3"}, values);
  s.truth = LevelDependentCapacity(LdcVariant::interval, p.scale,
                                   {test::random_two_additive(3, rng), test::random_two_additive(3, rng)});
  std::vector<double> v;
  for (std::size_t a = 0; a < alternatives; ++a) v.push_back(ildc(p.evaluations.row(a), s.truth));
  for (std::size_t a = 0; a < alternatives; ++a)
    for (std::size_t b = 0; b < alternatives; ++b)
      if (v[a] > v[b] + 0.02) s.pool.push_back({ids[a], ids[b], PreferenceRelation::strict});
  std::shuffle(s.pool.begin(), s.pool.end(), rng);
  return s;
}

bool dominates(const EvaluationMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.criteria(); ++i)
    if (m.at(a, i) < m.at(b, i)) return false;
  return true;
}

TEST(Edm, BaseRowCounts) {
  const auto p = test::load("students.json", "students.csv");
  const auto sys = build_edm(p);
  // Per block: normalization plus n * 2^(n-1) monotonicity rows; then one row per preference.
  EXPECT_EQ(sys.rows().size(), 2u * (1 + 2 * 2) + 5);
  EXPECT_EQ(sys.statements(), 5u);
  EXPECT_EQ(sys.statement_labels()[0], "A > C");
}

TEST(Edm, PreferenceRowIsIntegralDifference) {
  const auto p = test::load("students.json", "students.csv");
  const auto sys = build_edm(p);
  const auto& row = sys.rows().back();
  ASSERT_EQ(row.statement, 4);
  EXPECT_EQ(row.epsilon_weight, 1.0);
  std::mt19937_64 rng(1);
  const LevelDependentCapacity ldc(LdcVariant::interval, p.scale,
                                   {test::random_two_additive(2, rng), test::random_two_additive(2, rng)});
  const auto& e = p.evaluations;
  EXPECT_NEAR(row.lhs(ldc.parameters()), ildc(e.row(e.index_of("F")), ldc) - ildc(e.row(e.index_of("D")), ldc),
              1e-12);
}

TEST(Compatibility, StudentsInterval) {
  const auto c = check_compatibility(build_edm(test::load("students.json", "students.csv")));
  ASSERT_TRUE(c.compatible());
  EXPECT_NEAR(c.epsilon_star, 1.0, 1e-9);
}

TEST(Compatibility, WeightedSumIsIncompatible) {
  const auto sys = build_edm(test::load("students_weighted_sum.json", "students.csv"));
  const auto c = check_compatibility(sys);
  EXPECT_FALSE(c.compatible());
  const auto conflicts = diagnose(sys);
  ASSERT_FALSE(conflicts.empty());
  const std::vector<int> c_b_e_f{1, 3};
  bool found = false;
  for (const auto& k : conflicts) found = found || k.statements == c_b_e_f;
  EXPECT_TRUE(found);
}

TEST(Compatibility, UniversityEpsilon) {
  const auto c = check_compatibility(build_edm(test::load("university.json", "university.csv")));
  ASSERT_TRUE(c.compatible());
  EXPECT_NEAR(c.epsilon_star, 0.25, 1e-7);
}

TEST(Compatibility, ThetaSatisfiesRows) {
  const auto sys = build_edm(test::load("university.json", "university.csv"));
  const auto c = check_compatibility(sys);
  for (const auto& r : sys.rows()) {
    const double v = r.lhs(c.theta) - r.epsilon_weight * c.epsilon_star;
    if (r.equality)
      EXPECT_NEAR(v, 0.0, 1e-7) << r.label;
    else
      EXPECT_GE(v, -1e-7) << r.label;
  }
  const auto ldc = LevelDependentCapacity::from_parameters(sys.layout(), c.theta);
  EXPECT_EQ(ldc.members().size(), 2u);
}

TEST(Compatibility, PiecewiseOpenEndpointsGiveEqualityAtBreakpoint) {
  const auto sys = build_edm(test::load("students_piecewise.json", "students.csv"));
  const auto c = check_compatibility(sys);
  ASSERT_TRUE(c.compatible());
  const auto ldc = LevelDependentCapacity::from_parameters(sys.layout(), c.theta);
  EXPECT_NEAR(shapley(ldc, 0, AtLevel{25}), shapley(ldc, 1, AtLevel{25}), 1e-7);
  EXPECT_NEAR(interaction(ldc, 0, 1, AtLevel{25}), 0.0, 1e-7);
  EXPECT_GT(shapley(ldc, 0, AtLevel{18}), shapley(ldc, 1, AtLevel{18}));
  EXPECT_GT(shapley(ldc, 1, AtLevel{30}), shapley(ldc, 0, AtLevel{30}));
}

TEST(Diagnose, MatchesBruteForceMinimalConflicts) {
  const auto sys = build_edm(test::load("students_weighted_sum.json", "students.csv"));
  const int m = static_cast<int>(sys.statements());
  std::vector<std::vector<int>> incompatible;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> pick;
    for (int k = 0; k < m; ++k)
      if (mask >> k & 1u) pick.push_back(k);
    if (pick.size() <= 4 && !check_compatibility(sys.restricted(pick)).compatible()) incompatible.push_back(pick);
  }
  std::set<std::vector<int>> minimal;
  for (const auto& s : incompatible) {
    bool is_min = true;
    for (const auto& t : incompatible)
      if (t.size() < s.size() && std::includes(s.begin(), s.end(), t.begin(), t.end())) is_min = false;
    if (is_min) minimal.insert(s);
  }
  std::set<std::vector<int>> got;
  for (const auto& c : diagnose(sys)) got.insert(c.statements);
  EXPECT_EQ(got, minimal);
}

TEST(Diagnose, CompatibleSystemHasNoConflicts) {
  EXPECT_TRUE(diagnose(build_edm(test::load("students.json", "students.csv"))).empty());
}

TEST(Ror, Students) {
  const auto p = test::load("students.json", "students.csv");
  const auto r = robust_ordinal_regression(p);
  ASSERT_EQ(r.alternatives, (std::vector<std::string>{"G", "H", "I"}));
  for (std::size_t a = 0; a < 3; ++a) {
    EXPECT_TRUE(r.is_necessary(a, a));
    EXPECT_TRUE(r.is_possible(a, a));
  }
  EXPECT_TRUE(r.is_necessary(0, 1));
  EXPECT_TRUE(r.is_necessary(2, 1));
  EXPECT_FALSE(r.is_necessary(0, 2));
  EXPECT_FALSE(r.is_necessary(2, 0));
  EXPECT_TRUE(r.is_possible(0, 2));
  EXPECT_TRUE(r.is_possible(2, 0));
  EXPECT_FALSE(r.is_possible(1, 0));
}

TEST(Ror, SerialAndParallelAgree) {
  const auto p = test::load("university.json", "university.csv");
  const auto a = robust_ordinal_regression(p, RorOptions{true});
  const auto b = robust_ordinal_regression(p, RorOptions{false});
  EXPECT_EQ(a.necessary.data(), b.necessary.data());
  EXPECT_EQ(a.possible.data(), b.possible.data());
}

TEST(Ror, IncompatibleThrows) {
  EXPECT_THROW(robust_ordinal_regression(test::load("students_weighted_sum.json", "students.csv")),
               IncompatibleError);
}

TEST(RorProperties, DominanceImpliesNecessaryAndNecessaryImpliesPossible) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = synthetic(rng);
    for (std::size_t k = 0; k < std::min<std::size_t>(3, s.pool.size()); ++k) s.problem.statements.push_back(s.pool[k]);
    const auto r = robust_ordinal_regression(s.problem);
    const auto& e = s.problem.evaluations;
    for (std::size_t a = 0; a < e.alternatives(); ++a)
      for (std::size_t b = 0; b < e.alternatives(); ++b) {
        if (dominates(e, a, b)) {
          EXPECT_TRUE(r.is_necessary(a, b)) << trial << ": " << a << " " << b;
        }
        if (r.is_necessary(a, b)) {
          EXPECT_TRUE(r.is_possible(a, b));
        }
        EXPECT_TRUE(r.is_possible(a, b) || r.is_possible(b, a));
      }
  }
}

TEST(RorProperties, AddingStatementsGrowsNecessaryAndShrinksPossible) {
  std::mt19937_64 rng(43);
  auto s = synthetic(rng, 9);
  ASSERT_GE(s.pool.size(), 20u);
  auto previous = robust_ordinal_regression(s.problem);
  for (int step = 0; step < 20; ++step) {
    s.problem.statements.push_back(s.pool[step]);
    const auto next = robust_ordinal_regression(s.problem);
    for (std::size_t a = 0; a < next.alternatives.size(); ++a)
      for (std::size_t b = 0; b < next.alternatives.size(); ++b) {
        if (previous.is_necessary(a, b)) {
          EXPECT_TRUE(next.is_necessary(a, b)) << step;
        }
        if (next.is_possible(a, b)) {
          EXPECT_TRUE(previous.is_possible(a, b)) << step;
        }
      }
    previous = next;
  }
}

TEST(RorProperties, StatedPreferencesAreNecessary) {
  std::mt19937_64 rng(44);
  auto s = synthetic(rng);
  for (std::size_t k = 0; k < std::min<std::size_t>(5, s.pool.size()); ++k) s.problem.statements.push_back(s.pool[k]);
  const auto r = robust_ordinal_regression(s.problem);
  const auto& e = s.problem.evaluations;
  for (std::size_t k = 0; k < std::min<std::size_t>(5, s.pool.size()); ++k) {
    const auto a = e.index_of(s.pool[k].a), b = e.index_of(s.pool[k].b);
    EXPECT_TRUE(r.is_necessary(a, b));
    EXPECT_FALSE(r.is_possible(b, a));
  }
}

}  // namespace
}  // namespace ldc
