#include "ldc/workbench/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace ldc::workbench {

namespace {

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%7.3f", 100.0 * v);
  return buf;
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::size_t id_width(const std::vector<std::string>& ids) {
  std::size_t w = 4;
  for (const auto& id : ids) w = std::max(w, id.size() + 1);
  return w;
}

std::string relation_table(const std::vector<std::string>& ids, const Matrix<char>& m) {
  std::ostringstream os;
  const std::size_t w = id_width(ids);
  os << pad("", w);
  for (const auto& id : ids) os << pad(id, w);
  os << '\n';
  for (std::size_t a = 0; a < ids.size(); ++a) {
    os << pad(ids[a], w);
    for (std::size_t b = 0; b < ids.size(); ++b) os << pad(m(a, b) ? "1" : ".", w);
    os << '\n';
  }
  return os.str();
}

}  // namespace

std::string format_validation(const ValidationReport& report) {
  if (report.ok()) return "valid\n";
  std::ostringstream os;
  os << report.issues.size() << " issue(s)\n";
  for (const auto& i : report.issues) os << "  " << i.location << ": " << i.message << '\n';
  return os.str();
}

std::string format_conflicts(const std::vector<Conflict>& conflicts) {
  std::ostringstream os;
  if (conflicts.empty()) os << "no minimal conflict found within the search limits\n";
  for (const auto& c : conflicts) {
    os << "conflict:";
    for (const auto& l : c.labels) os << " {" << l << "}";
    os << '\n';
  }
  return os.str();
}

std::string format_ror(const RorResult& r) {
  std::ostringstream os;
  os << "necessary preference (row over column)\n" << relation_table(r.alternatives, r.necessary);
  os << "\npossible preference (row over column)\n" << relation_table(r.alternatives, r.possible);
  return os.str();
}

std::string format_smaa(const SmaaResult& r) {
  std::ostringstream os;
  const std::size_t w = id_width(r.alternatives);
  const std::size_t k = r.alternatives.size();
  os << "samples: " << r.samples << "\n\nrank acceptability (%)\n" << pad("", w);
  for (std::size_t s = 1; s <= k; ++s) os << pad("b" + std::to_string(s), 8);
  os << '\n';
  for (std::size_t a = 0; a < k; ++a) {
    os << pad(r.alternatives[a], w);
    for (std::size_t s = 0; s < k; ++s) os << percent(r.rai(a, s)) << ' ';
    os << '\n';
  }
  os << "\npairwise winning (%), row over column\n" << pad("", w);
  for (const auto& id : r.alternatives) os << pad(id, 8);
  os << '\n';
  for (std::size_t a = 0; a < k; ++a) {
    os << pad(r.alternatives[a], w);
    for (std::size_t c = 0; c < k; ++c) os << percent(r.pwi(a, c)) << ' ';
    os << '\n';
  }
  os << "\nexpected ranking\n";
  const auto order = expected_ranking(r);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const auto a = static_cast<std::size_t>(std::find(r.alternatives.begin(), r.alternatives.end(), order[pos]) -
                                            r.alternatives.begin());
    const auto& s = r.summary[a];
    os << "  " << pad(std::to_string(pos + 1) + ".", 5) << pad(order[pos], w) << "E=" << number(r.expected[a])
       << "  best " << s.best << " (" << number(s.best_share) << ")  worst " << s.worst << " ("
       << number(s.worst_share) << ")\n";
  }
  return os.str();
}

std::string format_explanation(const Explanation& e, const std::vector<Criterion>& criteria) {
  std::ostringstream os;
  const auto& ldc = e.barycenter;
  const bool interval = ldc.variant() == LdcVariant::interval;
  os << "barycenter capacity (" << to_string(ldc.variant()) << ")\n";
  for (std::size_t k = 0; k < ldc.members().size(); ++k) {
    const auto& sc = ldc.scale();
    if (interval) {
      os << "  interval [" << sc.breakpoint(static_cast<int>(k)) << ", " << sc.breakpoint(static_cast<int>(k) + 1) << "]";
    } else {
      os << "  level " << sc.breakpoint(static_cast<int>(k));
    }
    os << '\n';
    const auto& m = ldc.members()[k];
    for (std::size_t t = 0; t < m.terms().size(); ++t) {
      std::string set;
      for (int i = 0; i < m.criteria(); ++i)
        if (contains(m.terms()[t], i)) set += (set.empty() ? "" : ",") + criteria[i].id;
      os << "    m({" << set << "}) = " << number(m.coefficients()[t]) << '\n';
    }
  }
  os << "\nShapley importance\n";
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    os << "  " << pad(criteria[i].id, 8);
    for (std::size_t b = 0; b < e.importance.blocks.cols(); ++b) os << number(e.importance.blocks(i, b)) << "  ";
    os << "comprehensive " << number(e.importance.comprehensive[i]) << '\n';
  }
  os << "\ninteraction\n";
  for (std::size_t k = 0; k < e.interaction.pairs.size(); ++k) {
    const auto [i, j] = e.interaction.pairs[k];
    os << "  " << pad(criteria[i].id + "," + criteria[j].id, 12);
    for (std::size_t b = 0; b < e.interaction.blocks.cols(); ++b) os << number(e.interaction.blocks(k, b)) << "  ";
    os << "comprehensive " << number(e.interaction.comprehensive[k]) << '\n';
  }
  os << "\nscores at the barycenter\n";
  for (std::size_t a = 0; a < e.alternatives.size(); ++a)
    os << "  " << pad(e.alternatives[a], 8) << number(e.scores[a]) << '\n';
  return os.str();
}

std::string format_fronts(const std::vector<std::vector<std::string>>& fronts) {
  std::ostringstream os;
  for (std::size_t f = 0; f < fronts.size(); ++f) {
    os << "front " << f + 1 << ":";
    for (const auto& id : fronts[f]) os << ' ' << id;
    os << '\n';
  }
  return os.str();
}

}  // namespace ldc::workbench
