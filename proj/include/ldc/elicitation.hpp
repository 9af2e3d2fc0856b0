/// Translation of preference statements into linear constraints on the
/// Moebius parameters, compatibility checks, conflict diagnosis and robust
/// ordinal regression.
#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldc/linear_form.hpp"
#include "ldc/lp.hpp"
#include "ldc/model.hpp"

namespace ldc {

/// Threshold above which an optimal epsilon counts as positive.
inline constexpr double kEpsilonThreshold = 1e-8;

class IncompatibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// lhs(theta) - epsilon_weight * eps >= 0, or = 0 when equality is set.
struct ConstraintRow {
  LinearForm lhs;
  double epsilon_weight = 0.0;
  bool equality = false;
  /// Index of the originating statement, -1 for normalization and monotonicity.
  int statement = -1;
  std::string label;
};

class ConstraintSystem {
 public:
  ConstraintSystem() = default;
  explicit ConstraintSystem(LdcLayout layout) : layout_(std::move(layout)) {}

  const LdcLayout& layout() const { return layout_; }
  std::size_t parameters() const { return static_cast<std::size_t>(layout_.size()); }
  const std::vector<ConstraintRow>& rows() const { return rows_; }
  const std::vector<std::string>& statement_labels() const { return labels_; }
  std::size_t statements() const { return labels_.size(); }

  void add(ConstraintRow row) { rows_.push_back(std::move(row)); }
  int add_statement(std::string label) {
    labels_.push_back(std::move(label));
    return static_cast<int>(labels_.size()) - 1;
  }

  /// Base rows plus the rows of the listed statements.
  ConstraintSystem restricted(std::span<const int> statements) const;

  /// Variables theta then eps; maximize eps subject to eps <= 1 and every row.
  LinearProgram epsilon_lp(std::span<const ConstraintRow> extra = {}) const;

 private:
  LdcLayout layout_;
  std::vector<ConstraintRow> rows_;
  std::vector<std::string> labels_;
};

/// Builds E^DM: normalization and monotonicity for every member capacity plus
/// one group of rows per statement. Validates the problem first.
ConstraintSystem build_edm(const Problem& problem);

/// Comprehensive value of every alternative of the evaluation matrix.
std::vector<LinearForm> alternative_forms(const Problem& problem, const LdcLayout& layout);

struct Compatibility {
  bool feasible = false;
  double epsilon_star = -kInfinity;
  std::vector<double> theta;
  bool compatible() const { return feasible && epsilon_star > kEpsilonThreshold; }
};

Compatibility check_compatibility(const ConstraintSystem& system, const LpSolver& solver = default_solver());

struct DiagnoseOptions {
  int max_size = 4;
  std::size_t max_results = 20;
};

struct Conflict {
  std::vector<int> statements;
  std::vector<std::string> labels;
};

/// Minimal sets of statements (up to max_size) that are incompatible on their own,
/// found by breadth-first search over subset size. Supersets of conflicts are skipped.
std::vector<Conflict> diagnose(const ConstraintSystem& system, const DiagnoseOptions& options = {},
                               const LpSolver& solver = default_solver());

struct RorOptions {
  bool parallel = true;
};

struct RorResult {
  std::vector<std::string> alternatives;
  Matrix<char> necessary;
  Matrix<char> possible;
  /// Optimal eps of the two test programs; -inf when infeasible.
  Matrix<double> epsilon_necessary;
  Matrix<double> epsilon_possible;

  bool is_necessary(std::size_t a, std::size_t b) const { return necessary(a, b) != 0; }
  bool is_possible(std::size_t a, std::size_t b) const { return possible(a, b) != 0; }
};

/// Necessary and possible relations over the ranked alternatives. Throws
/// IncompatibleError when the statements admit no compatible capacity.
RorResult robust_ordinal_regression(const Problem& problem, const RorOptions& options = {},
                                    const LpSolver& solver = default_solver());
RorResult robust_ordinal_regression(const Problem& problem, const ConstraintSystem& system,
                                    const RorOptions& options = {}, const LpSolver& solver = default_solver());

}  // namespace ldc
