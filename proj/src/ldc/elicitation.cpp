#include "ldc/elicitation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <sstream>

#include "ldc/choquet.hpp"
#include "ldc/indices.hpp"

namespace ldc {

ConstraintSystem ConstraintSystem::restricted(std::span<const int> statements) const {
  ConstraintSystem out(layout_);
  out.labels_ = labels_;
  for (const auto& r : rows_)
    if (r.statement < 0 || std::find(statements.begin(), statements.end(), r.statement) != statements.end())
      out.rows_.push_back(r);
  return out;
}

LinearProgram ConstraintSystem::epsilon_lp(std::span<const ConstraintRow> extra) const {
  const std::size_t n = parameters();
  LinearProgram lp(n + 1);
  lp.objective[n] = 1.0;
  lp.bound(n, -kInfinity, 1.0);
  auto push = [&](const ConstraintRow& r) {
    std::vector<double> c(r.lhs.coefficients);
    c.push_back(-r.epsilon_weight);
    lp.add(std::move(c), r.equality ? LpRelation::equal : LpRelation::greater_equal, -r.lhs.constant);
  };
  for (const auto& r : rows_) push(r);
  for (const auto& r : extra) push(r);
  return lp;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void add_base_rows(ConstraintSystem& sys) {
  const LdcLayout& L = sys.layout();
  const int n = L.criteria();
  const auto& terms = L.terms();
  for (int b = 0; b < L.blocks(); ++b) {
    const std::string where = (L.variant() == LdcVariant::interval ? "interval " + std::to_string(b + 1)
                                                                   : "level " + fmt(L.scale().breakpoint(b)));
    ConstraintRow norm{LinearForm(L.size(), -1.0), 0.0, true, -1, "normalization at " + where};
    for (std::size_t t = 0; t < terms.size(); ++t) norm.lhs.coefficients[L.index(b, t)] = 1.0;
    sys.add(std::move(norm));
    for (int i = 0; i < n; ++i) {
      const Subset others = full_set(n) & ~singleton(i);
      // Every subset E of the other criteria, the empty set included.
      const Subset range = L.kind() == CapacityKind::additive ? 0 : others;
      for (Subset e = range;; e = (e - 1) & range) {
        ConstraintRow row{LinearForm(L.size()), 0.0, false, -1, ""};
        for (std::size_t t = 0; t < terms.size(); ++t) {
          const Subset s = terms[t];
          if (contains(s, i) && ((s & ~singleton(i)) & ~e) == 0) row.lhs.coefficients[L.index(b, t)] = 1.0;
        }
        std::ostringstream os;
        os << "monotonicity of criterion " << i << " over subset " << e << " at " << where;
        row.label = os.str();
        sys.add(std::move(row));
        if (e == 0) break;
      }
    }
  }
}

/// Locations where a pairwise index statement is imposed, with strictness.
struct IndexSite {
  IndexLocation where;
  bool strict_allowed = true;
};

std::vector<IndexSite> expand_range(const LdcLayout& L, const IndexRange& range) {
  const Scale& sc = L.scale();
  const int p = sc.intervals();
  std::vector<IndexSite> out;
  if (std::holds_alternative<Comprehensive>(range)) {
    out.push_back({Comprehensive{}, true});
    return out;
  }
  LevelRange lr;
  if (auto* iv = std::get_if<IntervalIndex>(&range)) {
    if (L.variant() == LdcVariant::interval) {
      out.push_back({IntervalIndex{iv->r}, true});
      return out;
    }
    lr = {sc.breakpoint(iv->r - 1), sc.breakpoint(iv->r), false, false};
  } else {
    lr = std::get<LevelRange>(range);
  }
  if (L.variant() == LdcVariant::interval) {
    for (int r = 1; r <= p; ++r) {
      const double lo = std::max(sc.breakpoint(r - 1), lr.from);
      const double hi = std::min(sc.breakpoint(r), lr.to);
      bool hit = lo < hi;
      if (lo == hi) {
        const bool in_interval = lo >= sc.breakpoint(r - 1) && (lo < sc.breakpoint(r) || r == p);
        const bool in_range = !(lo == lr.from && lr.lower_open) && !(lo == lr.to && lr.upper_open);
        hit = in_interval && in_range;
      }
      if (hit) out.push_back({IntervalIndex{r}, true});
    }
    return out;
  }
  out.push_back({AtLevel{lr.from}, !lr.lower_open});
  for (int k = 1; k < p; ++k)
    if (sc.breakpoint(k) > lr.from && sc.breakpoint(k) < lr.to) out.push_back({AtLevel{sc.breakpoint(k)}, true});
  if (lr.to > lr.from) out.push_back({AtLevel{lr.to}, !lr.upper_open});
  return out;
}

void add_relation(ConstraintSystem& sys, LinearForm diff, PreferenceRelation rel, bool strict_allowed, int stmt,
                  std::string label) {
  ConstraintRow row{std::move(diff), 0.0, false, stmt, std::move(label)};
  if (rel == PreferenceRelation::strict && strict_allowed) row.epsilon_weight = 1.0;
  if (rel == PreferenceRelation::indifferent) row.equality = true;
  sys.add(std::move(row));
}

}  // namespace

std::vector<LinearForm> alternative_forms(const Problem& problem, const LdcLayout& layout) {
  std::vector<LinearForm> out;
  for (std::size_t a = 0; a < problem.evaluations.alternatives(); ++a)
    out.push_back(choquet_form(problem.evaluations.row(a), layout));
  return out;
}

ConstraintSystem build_edm(const Problem& problem) {
  require_valid(problem);
  const LdcLayout L = problem.layout();
  ConstraintSystem sys(L);
  add_base_rows(sys);
  const auto forms = alternative_forms(problem, L);
  auto alt = [&](const std::string& id) -> const LinearForm& { return forms[problem.evaluations.index_of(id)]; };
  for (const auto& st : problem.statements) {
    const int k = sys.add_statement(describe(st));
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, AltPreference>) {
            add_relation(sys, alt(s.a) - alt(s.b), s.relation, true, k, describe(st));
          } else if constexpr (std::is_same_v<T, ImportanceComparison>) {
            const int i = static_cast<int>(problem.criterion_index(s.i));
            const int j = static_cast<int>(problem.criterion_index(s.j));
            for (const auto& site : expand_range(L, s.range))
              add_relation(sys, shapley_form(L, i, site.where) - shapley_form(L, j, site.where), s.relation,
                           site.strict_allowed, k, describe(st));
          } else if constexpr (std::is_same_v<T, InteractionSign>) {
            const int i = static_cast<int>(problem.criterion_index(s.i));
            const int j = static_cast<int>(problem.criterion_index(s.j));
            for (const auto& site : expand_range(L, s.range)) {
              LinearForm f = interaction_form(L, i, j, site.where);
              if (s.sign == InteractionSignKind::negative) f *= -1.0;
              add_relation(sys, std::move(f), PreferenceRelation::strict, site.strict_allowed, k, describe(st));
            }
          } else {
            for (std::size_t g = 0; g < s.groups.size(); ++g) {
              const auto& head = s.groups[g].front();
              for (std::size_t m = 1; m < s.groups[g].size(); ++m)
                add_relation(sys, alt(head) - alt(s.groups[g][m]), PreferenceRelation::indifferent, true, k,
                             describe(st));
              if (g + 1 < s.groups.size())
                add_relation(sys, alt(head) - alt(s.groups[g + 1].front()), PreferenceRelation::strict, true, k,
                             describe(st));
            }
          }
        },
        st);
  }
  return sys;
}

Compatibility check_compatibility(const ConstraintSystem& system, const LpSolver& solver) {
  const LpSolution s = solver.solve(system.epsilon_lp());
  Compatibility out;
  if (s.status != LpStatus::optimal) return out;
  out.feasible = true;
  out.epsilon_star = s.x.back();
  out.theta.assign(s.x.begin(), s.x.end() - 1);
  return out;
}

std::vector<Conflict> diagnose(const ConstraintSystem& system, const DiagnoseOptions& options,
                               const LpSolver& solver) {
  std::vector<Conflict> found;
  const int m = static_cast<int>(system.statements());
  std::vector<int> pick;
  auto covers = [&](const std::vector<int>& s) {
    for (const auto& c : found)
      if (std::includes(s.begin(), s.end(), c.statements.begin(), c.statements.end())) return true;
    return false;
  };
  std::function<bool(int, int)> rec = [&](int start, int left) -> bool {
    if (left == 0) {
      if (covers(pick)) return true;
      if (!check_compatibility(system.restricted(pick), solver).compatible()) {
        Conflict c{pick, {}};
        for (int k : pick) c.labels.push_back(system.statement_labels()[k]);
        found.push_back(std::move(c));
        if (found.size() >= options.max_results) return false;
      }
      return true;
    }
    for (int k = start; k <= m - left; ++k) {
      pick.push_back(k);
      const bool go = rec(k + 1, left - 1);
      pick.pop_back();
      if (!go) return false;
    }
    return true;
  };
  for (int size = 1; size <= std::min(options.max_size, m); ++size)
    if (!rec(0, size)) break;
  return found;
}

RorResult robust_ordinal_regression(const Problem& problem, const RorOptions& options, const LpSolver& solver) {
  return robust_ordinal_regression(problem, build_edm(problem), options, solver);
}

RorResult robust_ordinal_regression(const Problem& problem, const ConstraintSystem& system,
                                    const RorOptions& options, const LpSolver& solver) {
  if (!check_compatibility(system, solver).compatible())
    throw IncompatibleError("preference statements admit no compatible capacity");
  const auto idx = problem.ranked_indices();
  const auto all = alternative_forms(problem, system.layout());
  const std::size_t k = idx.size();
  RorResult out;
  for (auto a : idx) out.alternatives.push_back(problem.evaluations.alternative_ids()[a]);
  out.necessary = Matrix<char>(k, k, 0);
  out.possible = Matrix<char>(k, k, 0);
  out.epsilon_necessary = Matrix<double>(k, k, -kInfinity);
  out.epsilon_possible = Matrix<double>(k, k, -kInfinity);

  auto solve_pair = [&](std::size_t p) {
    const std::size_t a = p / k, b = p % k;
    const LinearForm& fa = all[idx[a]];
    const LinearForm& fb = all[idx[b]];
    // Necessary: no compatible capacity puts b strictly above a.
    ConstraintRow nrow{fb - fa, 1.0, false, -1, "counter-example"};
    const LpSolution sn = solver.solve(system.epsilon_lp(std::span<const ConstraintRow>(&nrow, 1)));
    if (sn.status == LpStatus::optimal) out.epsilon_necessary(a, b) = sn.x.back();
    out.necessary(a, b) = sn.status != LpStatus::optimal || sn.x.back() <= kEpsilonThreshold;
    ConstraintRow prow{fa - fb, 0.0, false, -1, "witness"};
    const LpSolution sp = solver.solve(system.epsilon_lp(std::span<const ConstraintRow>(&prow, 1)));
    if (sp.status == LpStatus::optimal) out.epsilon_possible(a, b) = sp.x.back();
    out.possible(a, b) = sp.status == LpStatus::optimal && sp.x.back() > kEpsilonThreshold;
  };

  const std::size_t pairs = k * k;
  if (!options.parallel) {
    for (std::size_t p = 0; p < pairs; ++p) solve_pair(p);
    return out;
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t p = 0; p < pairs; ++p) {
    try {
      solve_pair(p);
    } catch (...) {
#pragma omp critical(ldc_ror_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace ldc
