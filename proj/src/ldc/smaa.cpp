#include "ldc/smaa.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <random>

#include "ldc/choquet.hpp"
#include "ldc/kernels.hpp"

namespace ldc {

void SamplerConfig::check() const {
  if (samples < 1) throw std::invalid_argument("samples must be at least 1");
  if (thinning < 1) throw std::invalid_argument("thinning must be at least 1");
  if (chains < 1) throw std::invalid_argument("chains must be at least 1");
  if (epsilon_mode == EpsilonMode::fixed_fraction && !(epsilon_fraction > 0.0 && epsilon_fraction <= 1.0))
    throw std::invalid_argument("epsilon fraction must lie in ]0, 1]");
}

namespace {

constexpr double kInteriorTolerance = 1e-9;
constexpr std::size_t kSlackRefresh = 1024;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Moves inequality rows that no point can satisfy strictly into the equalities.
Polytope promote_implicit_equalities(const Polytope& poly) {
  Polytope out(poly.dimension);
  out.e = poly.e;
  out.f = poly.f;
  const std::size_t n = poly.dimension;
  for (std::size_t k = 0; k < poly.a.size(); ++k) {
    LinearProgram lp(n);
    lp.sense = LpSense::minimize;
    lp.objective = poly.a[k];
    for (std::size_t r = 0; r < poly.a.size(); ++r) lp.add(poly.a[r], LpRelation::less_equal, poly.b[r]);
    for (std::size_t r = 0; r < poly.e.size(); ++r) lp.add(poly.e[r], LpRelation::equal, poly.f[r]);
    const LpSolution s = default_solver().solve(lp);
    if (s.status == LpStatus::infeasible) throw EmptyPolytopeError("polytope is empty");
    const double max_slack = s.status == LpStatus::unbounded ? kInfinity : poly.b[k] - s.objective;
    if (max_slack <= kInteriorTolerance) {
      out.equal(poly.a[k], poly.b[k]);
    } else {
      out.less_equal(poly.a[k], poly.b[k]);
    }
  }
  return out;
}

struct Walk {
  std::vector<double> origin;  // n
  Matrix<double> basis;        // n x d
  Matrix<double> g;            // m x d
  std::vector<double> slack0;  // m
};

void run_chain(const Walk& w, std::uint64_t seed, std::size_t burn_in, std::size_t count, std::size_t thinning,
               Matrix<double>& out, std::size_t offset) {
  const std::size_t d = w.basis.cols();
  const std::size_t m = w.g.rows();
  const std::size_t n = w.origin.size();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> z(d, 0.0), u(d), gu(m), s(w.slack0);
  std::size_t steps = 0;
  auto step = [&] {
    double norm = 0.0;
    do {
      norm = 0.0;
      for (double& v : u) {
        v = normal(rng);
        norm += v * v;
      }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (double& v : u) v /= norm;
    double lo = -kInfinity, hi = kInfinity;
    for (std::size_t k = 0; k < m; ++k) {
      double dot = 0.0;
      const auto row = w.g.row(k);
      for (std::size_t c = 0; c < d; ++c) dot += row[c] * u[c];
      gu[k] = dot;
      const double sk = std::max(0.0, s[k]);
      if (dot > 1e-14) {
        hi = std::min(hi, sk / dot);
      } else if (dot < -1e-14) {
        lo = std::max(lo, sk / dot);
      }
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw SamplerError("polytope is unbounded");
    const double t = lo + uniform(rng) * (hi - lo);
    for (std::size_t c = 0; c < d; ++c) z[c] += t * u[c];
    for (std::size_t k = 0; k < m; ++k) s[k] -= t * gu[k];
    if (++steps % kSlackRefresh == 0) {
      for (std::size_t k = 0; k < m; ++k) {
        double dot = 0.0;
        const auto row = w.g.row(k);
        for (std::size_t c = 0; c < d; ++c) dot += row[c] * z[c];
        s[k] = w.slack0[k] - dot;
      }
    }
  };
  if (d > 0)
    for (std::size_t k = 0; k < burn_in; ++k) step();
  for (std::size_t k = 0; k < count; ++k) {
    if (d > 0)
      for (std::size_t j = 0; j < thinning; ++j) step();
    auto row = out.row(offset + k);
    for (std::size_t i = 0; i < n; ++i) {
      double v = w.origin[i];
      for (std::size_t c = 0; c < d; ++c) v += w.basis(i, c) * z[c];
      row[i] = v;
    }
  }
}

}  // namespace

Matrix<double> har_sample(const Polytope& input, const SamplerConfig& cfg) {
  cfg.check();
  Polytope poly = input;
  ChebyshevCenter center = chebyshev_center(poly);
  if (center.radius <= kInteriorTolerance && !poly.a.empty()) {
    poly = promote_implicit_equalities(poly);
    center = chebyshev_center(poly);
  }
  const bool has_inequalities = !poly.a.empty();
  const Matrix<double> basis = nullspace_basis(poly.e, poly.dimension);
  if (has_inequalities && basis.cols() > 0 && center.radius <= kInteriorTolerance)
    throw SamplerError("polytope has an empty relative interior");

  Walk w{center.point, basis, {}, {}};
  const std::size_t d = basis.cols();
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < poly.a.size(); ++k) {
    std::vector<double> g(d, 0.0);
    double norm = 0.0, s = poly.b[k];
    for (std::size_t i = 0; i < poly.dimension; ++i) s -= poly.a[k][i] * center.point[i];
    for (std::size_t c = 0; c < d; ++c) {
      for (std::size_t i = 0; i < poly.dimension; ++i) g[c] += poly.a[k][i] * basis(i, c);
      norm += g[c] * g[c];
    }
    if (std::sqrt(norm) <= 1e-12) continue;
    rows.push_back(std::move(g));
    w.slack0.push_back(s);
  }
  w.g = Matrix<double>(rows.size(), d);
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (std::size_t c = 0; c < d; ++c) w.g(k, c) = rows[k][c];

  Matrix<double> out(cfg.samples, poly.dimension);
  const auto chains = static_cast<std::int64_t>(std::min<std::size_t>(cfg.chains, cfg.samples));
  std::vector<std::size_t> offset(chains + 1, 0);
  for (std::int64_t j = 0; j < chains; ++j)
    offset[j + 1] = offset[j] + cfg.samples / chains + (static_cast<std::size_t>(j) < cfg.samples % chains ? 1 : 0);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
  for (std::int64_t j = 0; j < chains; ++j) {
    try {
      run_chain(w, splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(j))), cfg.burn_in,
                offset[j + 1] - offset[j], cfg.thinning, out, offset[j]);
    } catch (...) {
#pragma omp critical(ldc_har_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

Polytope compatible_polytope(const ConstraintSystem& system, const SamplerConfig& cfg, const LpSolver& solver) {
  double eps = 0.0;
  if (cfg.epsilon_mode == EpsilonMode::fixed_fraction) {
    const auto c = check_compatibility(system, solver);
    if (!c.compatible()) throw IncompatibleError("preference statements admit no compatible capacity");
    eps = cfg.epsilon_fraction * c.epsilon_star;
  }
  Polytope poly(system.parameters());
  for (const auto& r : system.rows()) {
    if (r.equality) {
      poly.equal(r.lhs.coefficients, -r.lhs.constant);
    } else {
      std::vector<double> a(r.lhs.coefficients);
      for (double& v : a) v = -v;
      poly.less_equal(std::move(a), r.lhs.constant - r.epsilon_weight * eps);
    }
  }
  return poly;
}

Matrix<double> har_sample(const ConstraintSystem& system, const SamplerConfig& cfg) {
  if (!check_compatibility(system).compatible())
    throw IncompatibleError("preference statements admit no compatible capacity");
  return har_sample(compatible_polytope(system, cfg), cfg);
}

std::vector<double> expected_scores(const Matrix<double>& rai) {
  std::vector<double> e(rai.rows(), 0.0);
  for (std::size_t a = 0; a < rai.rows(); ++a)
    for (std::size_t s = 0; s < rai.cols(); ++s) e[a] -= static_cast<double>(s + 1) * rai(a, s);
  return e;
}

std::vector<std::string> expected_ranking(const SmaaResult& result) {
  std::vector<std::size_t> order(result.alternatives.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (result.expected[a] != result.expected[b]) return result.expected[a] > result.expected[b];
    return result.alternatives[a] < result.alternatives[b];
  });
  std::vector<std::string> out;
  for (auto k : order) out.push_back(result.alternatives[k]);
  return out;
}

SmaaResult smaa_indices(const Matrix<double>& samples, const std::vector<LinearForm>& forms,
                        std::vector<std::string> alternatives, double tie_tolerance, bool parallel) {
  if (alternatives.size() != forms.size()) throw std::invalid_argument("one form per alternative is required");
  const Matrix<double> values =
      parallel ? kernels::evaluate_parallel(samples, forms) : kernels::evaluate_serial(samples, forms);
  const kernels::RankCounts c =
      parallel ? kernels::accumulate_parallel(values, tie_tolerance) : kernels::accumulate_serial(values, tie_tolerance);
  const std::size_t k = forms.size();
  const double total = static_cast<double>(c.samples);
  SmaaResult r;
  r.alternatives = std::move(alternatives);
  r.samples = c.samples;
  r.rai = Matrix<double>(k, k);
  r.pwi = Matrix<double>(k, k);
  r.ties = Matrix<double>(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      r.rai(a, b) = static_cast<double>(c.rank(a, b)) / total;
      r.pwi(a, b) = static_cast<double>(c.wins(a, b)) / total;
      r.ties(a, b) = static_cast<double>(c.ties(a, b)) / total;
    }
  r.expected = expected_scores(r.rai);
  for (std::size_t a = 0; a < k; ++a) {
    PositionSummary ps;
    std::vector<std::pair<int, double>> seen;
    for (std::size_t s = 0; s < k; ++s) {
      if (c.rank(a, s) == 0) continue;
      const int rank = static_cast<int>(s) + 1;
      if (ps.best == 0) {
        ps.best = rank;
        ps.best_share = r.rai(a, s);
      }
      ps.worst = rank;
      ps.worst_share = r.rai(a, s);
      seen.emplace_back(rank, r.rai(a, s));
    }
    std::stable_sort(seen.begin(), seen.end(), [](const auto& x, const auto& y) { return x.second > y.second; });
    if (seen.size() > 3) seen.resize(3);
    ps.most_frequent = std::move(seen);
    r.summary.push_back(std::move(ps));
  }
  r.barycenter.assign(samples.cols(), 0.0);
  for (std::size_t s = 0; s < samples.rows(); ++s)
    for (std::size_t j = 0; j < samples.cols(); ++j) r.barycenter[j] += samples(s, j);
  for (double& v : r.barycenter) v /= static_cast<double>(samples.rows());
  return r;
}

SmaaResult smaa_run(const Problem& problem, const SamplerConfig& cfg) {
  return smaa_run(problem, build_edm(problem), cfg);
}

SmaaResult smaa_run(const Problem& problem, const ConstraintSystem& system, const SamplerConfig& cfg) {
  const Matrix<double> samples = har_sample(system, cfg);
  const auto all = alternative_forms(problem, system.layout());
  std::vector<LinearForm> forms;
  std::vector<std::string> ids;
  for (auto a : problem.ranked_indices()) {
    forms.push_back(all[a]);
    ids.push_back(problem.evaluations.alternative_ids()[a]);
  }
  const double tol = 1e-9 * std::max(1.0, problem.scale.width());
  return smaa_indices(samples, forms, std::move(ids), tol, cfg.parallel);
}

Explanation explain_full_ranking(const Problem& problem, const SamplerConfig& cfg) {
  const bool ranked = std::any_of(problem.statements.begin(), problem.statements.end(),
                                  [](const auto& s) { return std::holds_alternative<FullRanking>(s); });
  if (!ranked) throw std::invalid_argument("explain needs a full ranking statement");
  const ConstraintSystem system = build_edm(problem);
  if (!check_compatibility(system).compatible()) {
    auto conflicts = diagnose(system);
    throw IncompatibleRankingError("ranking is incompatible with the statements", std::move(conflicts));
  }
  const Matrix<double> samples = har_sample(system, cfg);
  std::vector<double> mean(samples.cols(), 0.0);
  for (std::size_t s = 0; s < samples.rows(); ++s)
    for (std::size_t j = 0; j < samples.cols(); ++j) mean[j] += samples(s, j);
  for (double& v : mean) v /= static_cast<double>(samples.rows());
  Explanation out{LevelDependentCapacity::from_parameters(system.layout(), mean), {}, {}, {}, {}};
  out.importance = importance_profile(out.barycenter);
  out.interaction = interaction_profile(out.barycenter);
  for (std::size_t a = 0; a < problem.evaluations.alternatives(); ++a) {
    out.alternatives.push_back(problem.evaluations.alternative_ids()[a]);
    out.scores.push_back(level_dependent_choquet(problem.evaluations.row(a), out.barycenter));
  }
  return out;
}

}  // namespace ldc
