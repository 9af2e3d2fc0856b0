#include "ldc/choquet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ldc {

namespace {

void require_size(std::span<const double> x, int n) {
  if (x.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("evaluation vector has wrong size");
}

void require_in_scale(std::span<const double> x, const Scale& scale) {
  for (double v : x)
    if (!scale.contains(v)) throw std::out_of_range("evaluation outside the scale");
}

/// Indices sorted by increasing value, ties by criterion index.
std::vector<int> ascending_order(std::span<const double> x) {
  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return x[a] < x[b]; });
  return order;
}

/// Adds to w[k] the integral over [u, v] of the hat function of breakpoint k.
void add_trapezoid_weights(const Scale& scale, double u, double v, std::vector<double>& w) {
  if (!(v > u)) return;
  const auto a = scale.breakpoints();
  for (int k = 0; k < scale.intervals(); ++k) {
    const double s = std::max(u, a[k]);
    const double e = std::min(v, a[k + 1]);
    if (!(e > s)) continue;
    const double len = a[k + 1] - a[k];
    const double ls = (s - a[k]) / len;
    const double le = (e - a[k]) / len;
    // Linear interpolation mu(a_k) (1 - l) + mu(a_{k+1}) l integrated over [s, e].
    w[k] += (e - s) * (1.0 - 0.5 * (ls + le));
    w[k + 1] += (e - s) * 0.5 * (ls + le);
  }
}

}  // namespace

std::vector<double> term_minima(std::span<const double> x, const std::vector<Subset>& terms) {
  std::vector<double> out;
  out.reserve(terms.size());
  for (Subset t : terms) {
    double m = INFINITY;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (contains(t, static_cast<int>(i))) m = std::min(m, x[i]);
    out.push_back(m);
  }
  return out;
}

double choquet(std::span<const double> x, const MobiusCapacity& m) {
  require_size(x, m.criteria());
  const auto mins = term_minima(x, m.terms());
  double v = 0.0;
  for (std::size_t k = 0; k < mins.size(); ++k) v += m.coefficients()[k] * mins[k];
  return v;
}

double choquet_sorted(std::span<const double> x, const MobiusCapacity& m) {
  require_size(x, m.criteria());
  const auto order = ascending_order(x);
  Subset upper = full_set(m.criteria());
  double prev = 0.0;
  double v = 0.0;
  for (int i : order) {
    v += m.value(upper) * (x[i] - prev);
    prev = x[i];
    upper &= ~singleton(i);
  }
  return v;
}

Matrix<double> slice(std::span<const double> x, const Scale& scale) {
  const int p = scale.intervals();
  Matrix<double> out(p, x.size());
  for (int r = 1; r <= p; ++r) {
    const double lo = scale.breakpoint(r - 1);
    const double len = scale.length(r);
    for (std::size_t i = 0; i < x.size(); ++i) out(r - 1, i) = std::clamp(x[i] - lo, 0.0, len);
  }
  return out;
}

double ildc(std::span<const double> x, const LevelDependentCapacity& ldc) {
  if (ldc.variant() != LdcVariant::interval) throw std::invalid_argument("ildc needs an interval LDC");
  require_size(x, ldc.criteria());
  require_in_scale(x, ldc.scale());
  const auto s = slice(x, ldc.scale());
  double v = ldc.scale().alpha();
  for (int r = 1; r <= ldc.scale().intervals(); ++r) v += choquet(s.row(r - 1), ldc.member(r));
  return v;
}

double ildc_ordinal_sum(std::span<const double> x, const LevelDependentCapacity& ldc) {
  if (ldc.variant() != LdcVariant::interval) throw std::invalid_argument("ildc needs an interval LDC");
  require_size(x, ldc.criteria());
  require_in_scale(x, ldc.scale());
  const Scale& sc = ldc.scale();
  double v = sc.alpha();
  std::vector<double> xt(x.size());
  for (int r = 1; r <= sc.intervals(); ++r) {
    const double lo = sc.breakpoint(r - 1);
    const double hi = sc.breakpoint(r);
    for (std::size_t i = 0; i < x.size(); ++i) xt[i] = std::clamp(x[i], lo, hi);
    v += choquet_sorted(xt, ldc.member(r)) - lo;
  }
  return v;
}

double capacity_at_level(const LevelDependentCapacity& ldc, Subset e, double t) {
  const Scale& sc = ldc.scale();
  if (!sc.contains(t)) throw std::out_of_range("level outside the scale");
  if (ldc.variant() == LdcVariant::interval) return ldc.member(sc.interval_of(t)).value(e);
  const int k = std::min(sc.lower_breakpoint(t), sc.intervals() - 1);
  const double lambda = (t - sc.breakpoint(k)) / sc.length(k + 1);
  const double lo = ldc.member(k).value(e);
  const double hi = ldc.member(k + 1).value(e);
  return lo + lambda * (hi - lo);
}

double pldc(std::span<const double> x, const LevelDependentCapacity& ldc) {
  if (ldc.variant() != LdcVariant::piecewise_linear) throw std::invalid_argument("pldc needs a piecewise-linear LDC");
  require_size(x, ldc.criteria());
  require_in_scale(x, ldc.scale());
  const Scale& sc = ldc.scale();
  const auto order = ascending_order(x);
  std::vector<double> w(sc.intervals() + 1);
  Subset upper = full_set(ldc.criteria());
  double prev = sc.alpha();
  double v = sc.alpha();
  for (int i : order) {
    std::fill(w.begin(), w.end(), 0.0);
    add_trapezoid_weights(sc, prev, x[i], w);
    for (int k = 0; k <= sc.intervals(); ++k)
      if (w[k] != 0.0) v += w[k] * ldc.member(k).value(upper);
    prev = x[i];
    upper &= ~singleton(i);
  }
  return v;
}

double level_dependent_choquet(std::span<const double> x, const LevelDependentCapacity& ldc) {
  return ldc.variant() == LdcVariant::interval ? ildc(x, ldc) : pldc(x, ldc);
}

LinearForm choquet_form(std::span<const double> x, const LdcLayout& layout) {
  require_size(x, layout.criteria());
  const Scale& sc = layout.scale();
  require_in_scale(x, sc);
  const auto& terms = layout.terms();
  LinearForm f(layout.size(), sc.alpha());
  if (layout.variant() == LdcVariant::interval) {
    const auto s = slice(x, sc);
    for (int r = 1; r <= sc.intervals(); ++r) {
      const auto mins = term_minima(s.row(r - 1), terms);
      for (std::size_t t = 0; t < terms.size(); ++t) f.coefficients[layout.index(r - 1, t)] = mins[t];
    }
    return f;
  }
  const auto order = ascending_order(x);
  std::vector<double> w(sc.intervals() + 1);
  Subset upper = full_set(layout.criteria());
  double prev = sc.alpha();
  for (int i : order) {
    std::fill(w.begin(), w.end(), 0.0);
    add_trapezoid_weights(sc, prev, x[i], w);
    for (int k = 0; k <= sc.intervals(); ++k) {
      if (w[k] == 0.0) continue;
      for (std::size_t t = 0; t < terms.size(); ++t)
        if ((terms[t] & ~upper) == 0) f.coefficients[layout.index(k, t)] += w[k];
    }
    prev = x[i];
    upper &= ~singleton(i);
  }
  return f;
}

double ldc_quadrature_oracle(std::span<const double> x, const LevelDependentCapacity& ldc, std::size_t steps) {
  require_size(x, ldc.criteria());
  const Scale& sc = ldc.scale();
  std::vector<std::vector<double>> tables;
  for (const auto& m : ldc.members()) tables.push_back(m.set_function());
  const int n = ldc.criteria();
  double integral = 0.0;
  for (int r = 1; r <= sc.intervals(); ++r) {
    const double lo = sc.breakpoint(r - 1);
    const double len = sc.length(r);
    const std::size_t panels =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(steps * len / sc.width())));
    const double h = len / static_cast<double>(panels);
    for (std::size_t k = 0; k < panels; ++k) {
      const double t = lo + (static_cast<double>(k) + 0.5) * h;
      Subset e = 0;
      for (int i = 0; i < n; ++i)
        if (x[i] >= t) e |= singleton(i);
      double mu;
      if (ldc.variant() == LdcVariant::interval) {
        mu = tables[r - 1][e];
      } else {
        const double lambda = (t - lo) / len;
        mu = (1.0 - lambda) * tables[r - 1][e] + lambda * tables[r][e];
      }
      integral += mu * h;
    }
  }
  return sc.alpha() + integral;
}

}  // namespace ldc
