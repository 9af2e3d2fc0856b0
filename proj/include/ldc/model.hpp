/// Domain types: evaluation scale, criteria, capacities in Moebius form,
/// level dependent capacities, preference statements and problems.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ldc/matrix.hpp"

namespace ldc {

/// Bitmask over criterion indices (bit i set means criterion i is in the set).
using Subset = std::uint32_t;

inline constexpr int kMaxCriteria = 16;
inline constexpr int kMaxGeneralCriteria = 12;
inline constexpr double kCapacityTolerance = 1e-9;
/// Tolerance on constraint satisfaction of LP and sampler output.
inline constexpr double kFeasibilityTolerance = 1e-7;

inline int popcount(Subset s) { return __builtin_popcount(s); }
inline bool contains(Subset s, int i) { return (s >> i) & 1u; }
inline Subset singleton(int i) { return Subset{1} << i; }
inline Subset full_set(int n) { return n >= 32 ? ~Subset{0} : (Subset{1} << n) - 1; }

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation scale [alpha, beta] split by breakpoints a_0 = alpha < ... < a_p = beta.
/// Construction never throws so that a broken scale can still be reported by validate().
class Scale {
 public:
  Scale() = default;
  explicit Scale(std::vector<double> breakpoints);
  Scale(double alpha, double beta, std::vector<double> breakpoints);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  std::span<const double> breakpoints() const { return breakpoints_; }
  double breakpoint(int r) const { return breakpoints_.at(r); }
  /// Number of subintervals p.
  int intervals() const { return static_cast<int>(breakpoints_.size()) - 1; }
  /// a_r - a_{r-1}, r in 1..p.
  double length(int r) const { return breakpoints_.at(r) - breakpoints_.at(r - 1); }
  double width() const { return beta_ - alpha_; }

  /// r in 1..p with t in [a_{r-1}, a_r[, the last interval being closed.
  int interval_of(double t) const;
  /// max{r : a_r < t}, or 0 when t <= a_0.
  int lower_breakpoint(double t) const;
  bool contains(double t) const { return t >= alpha_ && t <= beta_; }

  std::vector<std::string> problems() const;
  bool valid() const { return problems().empty(); }

 private:
  double alpha_ = 0.0;
  double beta_ = 0.0;
  std::vector<double> breakpoints_;
};

struct Criterion {
  std::string id;
  std::string name;
};

/// Alternatives x criteria table of evaluations.
class EvaluationMatrix {
 public:
  EvaluationMatrix() = default;
  EvaluationMatrix(std::vector<std::string> alternatives, std::vector<std::string> criteria,
                   Matrix<double> values);

  std::size_t alternatives() const { return alternatives_.size(); }
  std::size_t criteria() const { return criteria_.size(); }
  const std::vector<std::string>& alternative_ids() const { return alternatives_; }
  const std::vector<std::string>& criterion_ids() const { return criteria_; }
  std::span<const double> row(std::size_t a) const { return values_.row(a); }
  double at(std::size_t a, std::size_t i) const { return values_(a, i); }
  const Matrix<double>& values() const { return values_; }

  std::optional<std::size_t> find(const std::string& alternative) const;
  std::size_t index_of(const std::string& alternative) const;

 private:
  std::vector<std::string> alternatives_;
  std::vector<std::string> criteria_;
  Matrix<double> values_;
};

/// Which Moebius terms a capacity carries.
enum class CapacityKind { additive, two_additive, general };

/// Nonempty subsets carrying a Moebius coefficient, in canonical order:
/// singletons by index, then pairs (i, j) with i < j lexicographically,
/// then (general kind only) the remaining subsets by increasing mask.
std::vector<Subset> term_layout(int n, CapacityKind kind);

/// Capacity stored through its Moebius representation. Coefficients of subsets
/// outside the layout are zero.
class MobiusCapacity {
 public:
  MobiusCapacity() = default;
  /// Throws std::invalid_argument when the coefficient count does not match the layout.
  MobiusCapacity(int n, CapacityKind kind, std::vector<double> coefficients);

  static MobiusCapacity additive(std::vector<double> weights);
  /// Pairs are given as an upper-triangular n x n matrix (only i < j read).
  static MobiusCapacity two_additive(std::vector<double> singletons, const Matrix<double>& pairs);
  /// Moebius inversion of a set function given on all 2^n subsets.
  static MobiusCapacity from_set_function(int n, CapacityKind kind, std::span<const double> mu);

  int criteria() const { return n_; }
  CapacityKind kind() const { return kind_; }
  const std::vector<Subset>& terms() const { return terms_; }
  const std::vector<double>& coefficients() const { return coefficients_; }

  double mobius(Subset s) const;
  /// mu(E) = sum of m(B) over B subset of E.
  double value(Subset e) const;
  /// mu on every subset, indexed by mask.
  std::vector<double> set_function() const;

  bool normalized(double tol = kCapacityTolerance) const;
  /// Largest violation of the monotonicity conditions, 0 when monotone.
  double monotonicity_violation() const;
  bool monotone(double tol = kCapacityTolerance) const {
    return monotonicity_violation() <= tol;
  }

 private:
  int n_ = 0;
  CapacityKind kind_ = CapacityKind::two_additive;
  std::vector<Subset> terms_;
  std::vector<double> coefficients_;
};

enum class LdcVariant { interval, piecewise_linear };

/// Layout of the flat parameter vector of a level dependent capacity:
/// one block of Moebius coefficients per interval (p blocks) or per
/// breakpoint (p + 1 blocks).
class LdcLayout {
 public:
  LdcLayout() = default;
  LdcLayout(LdcVariant variant, Scale scale, int n, CapacityKind kind);

  LdcVariant variant() const { return variant_; }
  const Scale& scale() const { return scale_; }
  int criteria() const { return n_; }
  CapacityKind kind() const { return kind_; }
  const std::vector<Subset>& terms() const { return terms_; }

  int blocks() const;
  int terms_per_block() const { return static_cast<int>(terms_.size()); }
  int size() const { return blocks() * terms_per_block(); }
  /// Flat position of term t in block b (0-based block).
  int index(int block, int term) const { return block * terms_per_block() + term; }
  int term_index(Subset s) const;

 private:
  LdcVariant variant_ = LdcVariant::interval;
  Scale scale_;
  int n_ = 0;
  CapacityKind kind_ = CapacityKind::two_additive;
  std::vector<Subset> terms_;
};

/// Family of capacities indexed by the level of the evaluation scale.
/// Interval variant: one capacity per subinterval. Piecewise-linear variant:
/// one capacity per breakpoint, linearly interpolated in between.
class LevelDependentCapacity {
 public:
  LevelDependentCapacity() = default;
  /// Throws std::invalid_argument on a wrong member count, mixed criteria
  /// counts or kinds, or a member that is not a normalized monotone capacity.
  LevelDependentCapacity(LdcVariant variant, Scale scale, std::vector<MobiusCapacity> members);

  static LevelDependentCapacity from_parameters(const LdcLayout& layout,
                                                std::span<const double> theta);

  LdcVariant variant() const { return variant_; }
  const Scale& scale() const { return scale_; }
  int criteria() const { return members_.front().criteria(); }
  CapacityKind kind() const { return members_.front().kind(); }
  const std::vector<MobiusCapacity>& members() const { return members_; }
  /// 1-based: interval r for the interval variant, breakpoint index 0..p otherwise.
  const MobiusCapacity& member(int k) const;

  LdcLayout layout() const;
  std::vector<double> parameters() const;

 private:
  LdcVariant variant_ = LdcVariant::interval;
  Scale scale_;
  std::vector<MobiusCapacity> members_;
};

// Preference statements -------------------------------------------------------

enum class PreferenceRelation { strict, weak, indifferent };

struct Comprehensive {};
/// A single subinterval [a_{r-1}, a_r[ (1-based).
struct IntervalIndex {
  int r = 1;
};
/// An evaluation range [from, to]; an open endpoint is only constrained non-strictly.
struct LevelRange {
  double from = 0.0;
  double to = 0.0;
  bool lower_open = false;
  bool upper_open = false;
};
using IndexRange = std::variant<Comprehensive, IntervalIndex, LevelRange>;

struct AltPreference {
  std::string a;
  std::string b;
  PreferenceRelation relation = PreferenceRelation::strict;
};

struct ImportanceComparison {
  std::string i;
  std::string j;
  PreferenceRelation relation = PreferenceRelation::strict;
  IndexRange range = Comprehensive{};
};

enum class InteractionSignKind { positive, negative };

struct InteractionSign {
  std::string i;
  std::string j;
  InteractionSignKind sign = InteractionSignKind::positive;
  IndexRange range = Comprehensive{};
};

/// Ordered groups of tied alternatives, best group first.
struct FullRanking {
  std::vector<std::vector<std::string>> groups;
};

using PreferenceStatement = std::variant<AltPreference, ImportanceComparison, InteractionSign, FullRanking>;

std::string describe(const PreferenceStatement& s);
std::string describe(const IndexRange& r);

// Problem ---------------------------------------------------------------------

struct Problem {
  std::string name;
  Scale scale;
  std::vector<Criterion> criteria;
  EvaluationMatrix evaluations;
  LdcVariant variant = LdcVariant::interval;
  CapacityKind kind = CapacityKind::two_additive;
  std::vector<PreferenceStatement> statements;
  /// Alternatives that SMAA and ROR rank; empty means all of them.
  std::vector<std::string> ranked;

  LdcLayout layout() const {
    return LdcLayout(variant, scale, static_cast<int>(criteria.size()), kind);
  }
  std::size_t criterion_index(const std::string& id) const;
  /// Indices into the evaluation matrix of the ranked alternatives.
  std::vector<std::size_t> ranked_indices() const;
};

struct ValidationIssue {
  std::string location;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string summary() const;
};

ValidationReport validate(const Problem& problem);
/// Throws ValidationError carrying the report summary when the problem is invalid.
void require_valid(const Problem& problem);

const char* to_string(CapacityKind kind);
const char* to_string(LdcVariant variant);
const char* to_string(PreferenceRelation relation);

}  // namespace ldc
