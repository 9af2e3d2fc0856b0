/// Shapley importance and interaction indices, per level and comprehensive.
#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "ldc/linear_form.hpp"
#include "ldc/model.hpp"

namespace ldc {

struct AtLevel {
  double t = 0.0;
};
/// Where an index is read: comprehensive (length-weighted average over the scale),
/// averaged over one subinterval, or at a single level.
using IndexLocation = std::variant<Comprehensive, IntervalIndex, AtLevel>;

/// phi_i = sum_{B containing i} m(B) / |B|.
double shapley(const MobiusCapacity& m, int i);
/// I_ij = sum_{B containing i, j} m(B) / (|B| - 1).
double interaction(const MobiusCapacity& m, int i, int j);

LinearForm shapley_form(const LdcLayout& layout, int i, const IndexLocation& where);
LinearForm interaction_form(const LdcLayout& layout, int i, int j, const IndexLocation& where);

double shapley(const LevelDependentCapacity& ldc, int i, const IndexLocation& where);
double interaction(const LevelDependentCapacity& ldc, int i, int j, const IndexLocation& where);

/// Per-block values: one column per interval (interval variant) or per breakpoint.
struct ImportanceProfile {
  Matrix<double> blocks;  // n x blocks
  std::vector<double> comprehensive;
};

struct InteractionProfile {
  std::vector<std::pair<int, int>> pairs;
  Matrix<double> blocks;  // pairs x blocks
  std::vector<double> comprehensive;
};

ImportanceProfile importance_profile(const LevelDependentCapacity& ldc);
InteractionProfile interaction_profile(const LevelDependentCapacity& ldc);

}  // namespace ldc
