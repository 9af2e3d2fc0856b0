#pragma once

#include <string>
#include <vector>

#include "ldc/model.hpp"

namespace ldc::workbench {

/// a dominates b: at least as good on every criterion and better on one.
bool dominates(const EvaluationMatrix& m, std::size_t a, std::size_t b);

/// Non-dominated fronts, best first; ids keep the matrix order within a front.
std::vector<std::vector<std::string>> pareto_fronts(const EvaluationMatrix& m);

}  // namespace ldc::workbench
