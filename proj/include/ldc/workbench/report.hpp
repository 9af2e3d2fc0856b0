/// Plain-text reports for the command line.
#pragma once

#include <string>
#include <vector>

#include "ldc/elicitation.hpp"
#include "ldc/smaa.hpp"

namespace ldc::workbench {

std::string format_validation(const ValidationReport& report);
std::string format_conflicts(const std::vector<Conflict>& conflicts);
std::string format_ror(const RorResult& r);
std::string format_smaa(const SmaaResult& r);
std::string format_explanation(const Explanation& e, const std::vector<Criterion>& criteria);
std::string format_fronts(const std::vector<std::vector<std::string>>& fronts);

}  // namespace ldc::workbench
