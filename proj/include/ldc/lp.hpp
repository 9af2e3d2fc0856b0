/// Linear programming: a dense two-phase primal simplex behind a solver
/// interface, the Chebyshev center of a polytope and nullspace bases.
#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "ldc/matrix.hpp"

namespace ldc {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class LpRelation { less_equal, equal, greater_equal };
enum class LpSense { maximize, minimize };
enum class LpStatus { optimal, infeasible, unbounded };

struct LpConstraint {
  std::vector<double> coefficients;
  LpRelation relation = LpRelation::less_equal;
  double rhs = 0.0;
};

struct VariableBounds {
  double lower = -kInfinity;
  double upper = kInfinity;
};

struct LinearProgram {
  std::size_t variables = 0;
  LpSense sense = LpSense::maximize;
  std::vector<double> objective;
  std::vector<LpConstraint> constraints;
  /// Empty means every variable is free.
  std::vector<VariableBounds> bounds;

  explicit LinearProgram(std::size_t n = 0) : variables(n), objective(n, 0.0) {}
  void add(std::vector<double> coefficients, LpRelation relation, double rhs) {
    constraints.push_back({std::move(coefficients), relation, rhs});
  }
  void bound(std::size_t j, double lower, double upper);
};

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t pivots = 0;
};

/// Raised when the simplex cannot certify its answer: iteration limit, or a
/// final basis whose solution violates the constraints.
class LpDegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyPolytopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LpSolver {
 public:
  virtual ~LpSolver() = default;
  virtual LpSolution solve(const LinearProgram& lp) const = 0;
};

struct SimplexOptions {
  double feasibility_tolerance = 1e-7;
  double pivot_tolerance = 1e-10;
  double optimality_tolerance = 1e-10;
  std::size_t max_pivots = 500000;
};

/// Dense tableau simplex with Bland's rule.
class SimplexSolver final : public LpSolver {
 public:
  explicit SimplexSolver(SimplexOptions options = {}) : options_(options) {}
  LpSolution solve(const LinearProgram& lp) const override;
  const SimplexOptions& options() const { return options_; }

 private:
  SimplexOptions options_;
};

const LpSolver& default_solver();

/// Largest violation of constraints and bounds at x.
double constraint_violation(const LinearProgram& lp, std::span<const double> x);

/// {y : A y <= b, E y = f}.
struct Polytope {
  std::size_t dimension = 0;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<std::vector<double>> e;
  std::vector<double> f;

  explicit Polytope(std::size_t n = 0) : dimension(n) {}
  void less_equal(std::vector<double> row, double rhs) {
    a.push_back(std::move(row));
    b.push_back(rhs);
  }
  void equal(std::vector<double> row, double rhs) {
    e.push_back(std::move(row));
    f.push_back(rhs);
  }
};

struct ChebyshevCenter {
  std::vector<double> point;
  /// Radius of the largest ball inside the polytope, measured within the affine
  /// hull of the equalities. Positive iff the relative interior is nonempty.
  double radius = 0.0;
};

/// Throws EmptyPolytopeError when the polytope is empty. The radius is capped
/// so that unbounded polytopes still return a point.
ChebyshevCenter chebyshev_center(const Polytope& poly, const LpSolver& solver = default_solver(),
                                 double radius_cap = 1e6);

/// Orthonormal basis of {x : E x = 0} as the columns of an n x d matrix.
/// Singular values up to tol * max(1, sigma_max) count as zero.
Matrix<double> nullspace_basis(const std::vector<std::vector<double>>& e, std::size_t n, double tol = 1e-10);

/// Minimum-norm solution of E x = f. Throws EmptyPolytopeError when inconsistent.
std::vector<double> particular_solution(const std::vector<std::vector<double>>& e, const std::vector<double>& f,
                                        std::size_t n);

}  // namespace ldc
