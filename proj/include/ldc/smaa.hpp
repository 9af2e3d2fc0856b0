/// Hit-and-run sampling of the compatible capacities and SMAA indices.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ldc/elicitation.hpp"
#include "ldc/indices.hpp"
#include "ldc/lp.hpp"
#include "ldc/matrix.hpp"
#include "ldc/model.hpp"

namespace ldc {

enum class EpsilonMode {
  /// Strict rows sampled as non-strict (eps = 0).
  boundary,
  /// Strict rows hold with eps = epsilon_fraction * eps*.
  fixed_fraction,
};

struct SamplerConfig {
  std::size_t samples = 100000;
  std::size_t burn_in = 1000;
  std::size_t thinning = 10;
  std::uint64_t seed = 20240601;
  /// Independent chains, each with its own derived seed. Results depend on this
  /// count but not on the number of threads.
  unsigned chains = 4;
  EpsilonMode epsilon_mode = EpsilonMode::boundary;
  double epsilon_fraction = 0.5;
  /// Use the OpenMP kernels. Does not change results.
  bool parallel = true;

  void check() const;
};

class SamplerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform hit-and-run over a polytope, started from its Chebyshev center and
/// moving in the nullspace of the equalities. Inequality rows whose slack cannot
/// be made positive are promoted to equalities. Samples are the rows of the result.
Matrix<double> har_sample(const Polytope& poly, const SamplerConfig& cfg);

/// The polytope of capacity parameters satisfying every row at the eps of cfg.
Polytope compatible_polytope(const ConstraintSystem& system, const SamplerConfig& cfg,
                             const LpSolver& solver = default_solver());

/// Samples of the flat capacity parameters. Throws IncompatibleError on an
/// incompatible system.
Matrix<double> har_sample(const ConstraintSystem& system, const SamplerConfig& cfg);

struct PositionSummary {
  int best = 0;
  double best_share = 0.0;
  int worst = 0;
  double worst_share = 0.0;
  /// Up to three (rank, share) pairs by decreasing share.
  std::vector<std::pair<int, double>> most_frequent;
};

struct SmaaResult {
  std::vector<std::string> alternatives;
  std::size_t samples = 0;
  Matrix<double> rai;   // alternatives x ranks, b^s(a) at column s-1
  Matrix<double> pwi;   // p(a, c)
  Matrix<double> ties;  // tie frequency of (a, c)
  std::vector<double> expected;
  std::vector<PositionSummary> summary;
  std::vector<double> barycenter;
};

/// Indices from precomputed samples; forms are the alternatives' integrals.
SmaaResult smaa_indices(const Matrix<double>& samples, const std::vector<LinearForm>& forms,
                        std::vector<std::string> alternatives, double tie_tolerance, bool parallel = true);

SmaaResult smaa_run(const Problem& problem, const SamplerConfig& cfg);
SmaaResult smaa_run(const Problem& problem, const ConstraintSystem& system, const SamplerConfig& cfg);

/// E(a) = -sum_s s b^s(a) for every row of an acceptability matrix.
std::vector<double> expected_scores(const Matrix<double>& rai);
/// Alternatives by decreasing E, ties by id.
std::vector<std::string> expected_ranking(const SmaaResult& result);

struct Explanation {
  LevelDependentCapacity barycenter;
  ImportanceProfile importance;
  InteractionProfile interaction;
  std::vector<std::string> alternatives;
  std::vector<double> scores;
};

class IncompatibleRankingError : public IncompatibleError {
 public:
  IncompatibleRankingError(const std::string& what, std::vector<Conflict> conflicts)
      : IncompatibleError(what), conflicts_(std::move(conflicts)) {}
  const std::vector<Conflict>& conflicts() const { return conflicts_; }

 private:
  std::vector<Conflict> conflicts_;
};

/// Barycenter of the capacities compatible with every statement of the problem,
/// which must include a full ranking. Throws IncompatibleRankingError with the
/// minimal conflicts when the statements are incompatible.
Explanation explain_full_ranking(const Problem& problem, const SamplerConfig& cfg);

}  // namespace ldc
