#include "ldc/workbench/pareto.hpp"

#include <algorithm>

namespace ldc::workbench {

bool dominates(const EvaluationMatrix& m, std::size_t a, std::size_t b) {
  bool better = false;
  for (std::size_t i = 0; i < m.criteria(); ++i) {
    if (m.at(a, i) < m.at(b, i)) return false;
    if (m.at(a, i) > m.at(b, i)) better = true;
  }
  return better;
}

std::vector<std::vector<std::string>> pareto_fronts(const EvaluationMatrix& m) {
  const std::size_t n = m.alternatives();
  // Non-dominated sorting: count dominators, peel fronts of zero count.
  std::vector<std::size_t> dominated_by(n, 0);
  std::vector<std::vector<std::size_t>> dominated(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && dominates(m, a, b)) {
        dominated[a].push_back(b);
        ++dominated_by[b];
      }
  std::vector<std::size_t> current;
  for (std::size_t a = 0; a < n; ++a)
    if (dominated_by[a] == 0) current.push_back(a);
  std::vector<std::vector<std::string>> fronts;
  while (!current.empty()) {
    std::vector<std::string> ids;
    std::vector<std::size_t> next;
    for (auto a : current) {
      ids.push_back(m.alternative_ids()[a]);
      for (auto b : dominated[a])
        if (--dominated_by[b] == 0) next.push_back(b);
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(ids));
    current = std::move(next);
  }
  return fronts;
}

}  // namespace ldc::workbench
