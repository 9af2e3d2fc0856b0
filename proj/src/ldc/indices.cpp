#include "ldc/indices.hpp"

#include <stdexcept>

namespace ldc {

namespace {

/// Block weights of a location: the index there is sum_b w_b * index(block b).
std::vector<double> block_weights(const LdcLayout& layout, const IndexLocation& where) {
  const Scale& sc = layout.scale();
  const int p = sc.intervals();
  std::vector<double> w(layout.blocks(), 0.0);
  const bool interval = layout.variant() == LdcVariant::interval;
  if (auto* lv = std::get_if<AtLevel>(&where)) {
    if (interval) {
      w[sc.interval_of(lv->t) - 1] = 1.0;
    } else {
      if (!sc.contains(lv->t)) throw std::out_of_range("level outside the scale");
      const int k = std::min(sc.lower_breakpoint(lv->t), p - 1);
      const double lambda = (lv->t - sc.breakpoint(k)) / sc.length(k + 1);
      w[k] += 1.0 - lambda;
      w[k + 1] += lambda;
    }
  } else if (auto* iv = std::get_if<IntervalIndex>(&where)) {
    if (iv->r < 1 || iv->r > p) throw std::out_of_range("interval index out of range");
    if (interval) {
      w[iv->r - 1] = 1.0;
    } else {
      w[iv->r - 1] += 0.5;
      w[iv->r] += 0.5;
    }
  } else {
    for (int r = 1; r <= p; ++r) {
      const double share = sc.length(r) / sc.width();
      if (interval) {
        w[r - 1] += share;
      } else {
        w[r - 1] += 0.5 * share;
        w[r] += 0.5 * share;
      }
    }
  }
  return w;
}

void check_criterion(const LdcLayout& layout, int i) {
  if (i < 0 || i >= layout.criteria()) throw std::out_of_range("criterion index out of range");
}

}  // namespace

double shapley(const MobiusCapacity& m, int i) {
  if (i < 0 || i >= m.criteria()) throw std::out_of_range("criterion index out of range");
  double v = 0.0;
  for (std::size_t k = 0; k < m.terms().size(); ++k)
    if (contains(m.terms()[k], i)) v += m.coefficients()[k] / popcount(m.terms()[k]);
  return v;
}

double interaction(const MobiusCapacity& m, int i, int j) {
  if (i < 0 || i >= m.criteria() || j < 0 || j >= m.criteria() || i == j)
    throw std::out_of_range("interaction needs two distinct criteria");
  const Subset ij = singleton(i) | singleton(j);
  double v = 0.0;
  for (std::size_t k = 0; k < m.terms().size(); ++k)
    if ((m.terms()[k] & ij) == ij) v += m.coefficients()[k] / (popcount(m.terms()[k]) - 1);
  return v;
}

LinearForm shapley_form(const LdcLayout& layout, int i, const IndexLocation& where) {
  check_criterion(layout, i);
  const auto w = block_weights(layout, where);
  LinearForm f(layout.size());
  const auto& terms = layout.terms();
  for (int b = 0; b < layout.blocks(); ++b) {
    if (w[b] == 0.0) continue;
    for (std::size_t t = 0; t < terms.size(); ++t)
      if (contains(terms[t], i)) f.coefficients[layout.index(b, t)] += w[b] / popcount(terms[t]);
  }
  return f;
}

LinearForm interaction_form(const LdcLayout& layout, int i, int j, const IndexLocation& where) {
  check_criterion(layout, i);
  check_criterion(layout, j);
  if (i == j) throw std::out_of_range("interaction needs two distinct criteria");
  const auto w = block_weights(layout, where);
  LinearForm f(layout.size());
  const auto& terms = layout.terms();
  const Subset ij = singleton(i) | singleton(j);
  for (int b = 0; b < layout.blocks(); ++b) {
    if (w[b] == 0.0) continue;
    for (std::size_t t = 0; t < terms.size(); ++t)
      if ((terms[t] & ij) == ij) f.coefficients[layout.index(b, t)] += w[b] / (popcount(terms[t]) - 1);
  }
  return f;
}

double shapley(const LevelDependentCapacity& ldc, int i, const IndexLocation& where) {
  return shapley_form(ldc.layout(), i, where)(ldc.parameters());
}

double interaction(const LevelDependentCapacity& ldc, int i, int j, const IndexLocation& where) {
  return interaction_form(ldc.layout(), i, j, where)(ldc.parameters());
}

ImportanceProfile importance_profile(const LevelDependentCapacity& ldc) {
  const int n = ldc.criteria();
  const int blocks = static_cast<int>(ldc.members().size());
  ImportanceProfile out{Matrix<double>(n, blocks), std::vector<double>(n)};
  for (int i = 0; i < n; ++i) {
    for (int b = 0; b < blocks; ++b) out.blocks(i, b) = shapley(ldc.members()[b], i);
    out.comprehensive[i] = shapley(ldc, i, Comprehensive{});
  }
  return out;
}

InteractionProfile interaction_profile(const LevelDependentCapacity& ldc) {
  const int n = ldc.criteria();
  const int blocks = static_cast<int>(ldc.members().size());
  InteractionProfile out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.pairs.emplace_back(i, j);
  out.blocks = Matrix<double>(out.pairs.size(), blocks);
  for (std::size_t k = 0; k < out.pairs.size(); ++k) {
    const auto [i, j] = out.pairs[k];
    for (int b = 0; b < blocks; ++b) out.blocks(k, b) = interaction(ldc.members()[b], i, j);
    out.comprehensive.push_back(interaction(ldc, i, j, Comprehensive{}));
  }
  return out;
}

}  // namespace ldc
