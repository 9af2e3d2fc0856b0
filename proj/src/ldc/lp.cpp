#include "ldc/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

namespace ldc {

void LinearProgram::bound(std::size_t j, double lower, double upper) {
  if (bounds.empty()) bounds.assign(variables, VariableBounds{});
  bounds.at(j) = {lower, upper};
}

namespace {

/// Original variable x_j = offset + col(plus) - col(minus).
struct VarMap {
  int plus = -1;
  int minus = -1;
  double offset = 0.0;
};

struct StdRow {
  std::vector<double> a;  // over structural columns
  bool equality = false;  // otherwise a . y <= b
  double b = 0.0;
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_((rows + 1) * (cols + 1), 0.0), basis_(rows, -1) {}

  double& at(std::size_t r, std::size_t c) { return t_[r * (n_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return t_[r * (n_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, n_); }
  double& z(std::size_t c) { return at(m_, c); }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<int>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = at(pr, pc);
    for (std::size_t c = 0; c <= n_; ++c) at(pr, c) /= p;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= n_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis_[pr] = static_cast<int>(pc);
  }

  /// Sets the objective row to reduced costs z_j - c_j for maximizing c . y.
  void price(const std::vector<double>& c) {
    for (std::size_t j = 0; j <= n_; ++j) z(j) = j < n_ ? -c[j] : 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < 0) continue;
      const double cb = c[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) z(j) += cb * at(r, j);
    }
  }

 private:
  std::size_t m_, n_;
  std::vector<double> t_;
  std::vector<int> basis_;
};

enum class Outcome { optimal, unbounded };

Outcome run(Tableau& t, const std::vector<bool>& allowed, const std::vector<bool>& active,
            const SimplexOptions& opt, std::size_t& pivots) {
  for (;;) {
    int enter = -1;
    for (std::size_t j = 0; j < t.cols(); ++j)
      if (allowed[j] && t.z(j) < -opt.optimality_tolerance) {
        enter = static_cast<int>(j);
        break;
      }
    if (enter < 0) return Outcome::optimal;
    int leave = -1;
    double best = kInfinity;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      if (!active[r]) continue;
      const double a = t.at(r, enter);
      if (a <= opt.pivot_tolerance) continue;
      const double ratio = std::max(0.0, t.rhs(r)) / a;
      if (leave < 0 || ratio < best - 1e-12 ||
          (std::abs(ratio - best) <= 1e-12 && t.basis()[r] < t.basis()[leave])) {
        best = ratio;
        leave = static_cast<int>(r);
      }
    }
    if (leave < 0) return Outcome::unbounded;
    t.pivot(leave, enter);
    if (++pivots > opt.max_pivots) throw LpDegeneracyError("simplex iteration limit reached");
  }
}

}  // namespace

double constraint_violation(const LinearProgram& lp, std::span<const double> x) {
  double worst = 0.0;
  for (const auto& c : lp.constraints) {
    double v = 0.0;
    for (std::size_t j = 0; j < lp.variables; ++j) v += c.coefficients[j] * x[j];
    const double scale = 1.0 + std::abs(c.rhs);
    switch (c.relation) {
      case LpRelation::less_equal: worst = std::max(worst, (v - c.rhs) / scale); break;
      case LpRelation::greater_equal: worst = std::max(worst, (c.rhs - v) / scale); break;
      case LpRelation::equal: worst = std::max(worst, std::abs(v - c.rhs) / scale); break;
    }
  }
  if (!lp.bounds.empty())
    for (std::size_t j = 0; j < lp.variables; ++j) {
      worst = std::max(worst, lp.bounds[j].lower - x[j]);
      worst = std::max(worst, x[j] - lp.bounds[j].upper);
    }
  return worst;
}

LpSolution SimplexSolver::solve(const LinearProgram& lp) const {
  const std::size_t nv = lp.variables;
  if (lp.objective.size() != nv) throw std::invalid_argument("objective size mismatch");
  if (!lp.bounds.empty() && lp.bounds.size() != nv) throw std::invalid_argument("bounds size mismatch");
  for (const auto& c : lp.constraints)
    if (c.coefficients.size() != nv) throw std::invalid_argument("constraint size mismatch");

  LpSolution sol;
  // Map variables onto nonnegative columns.
  std::vector<VarMap> map(nv);
  std::vector<StdRow> rows;
  int ncols = 0;
  std::vector<std::pair<int, double>> upper_rows;           // column, bound
  std::vector<std::pair<std::size_t, double>> split_upper_rows;  // variable, bound
  for (std::size_t j = 0; j < nv; ++j) {
    const VariableBounds b = lp.bounds.empty() ? VariableBounds{} : lp.bounds[j];
    if (b.lower > b.upper) return sol;  // infeasible
    if (std::isfinite(b.lower)) {
      map[j] = {ncols++, -1, b.lower};
      if (std::isfinite(b.upper)) upper_rows.emplace_back(map[j].plus, b.upper - b.lower);
    } else {
      // Free split, an upper bound alone becomes a row (reflecting around a large bound loses precision).
      map[j].plus = ncols++;
      map[j].minus = ncols++;
      if (std::isfinite(b.upper)) split_upper_rows.emplace_back(j, b.upper);
    }
  }
  for (const auto& c : lp.constraints) {
    StdRow r;
    r.a.assign(ncols, 0.0);
    double b = c.rhs;
    for (std::size_t j = 0; j < nv; ++j) {
      const double a = c.coefficients[j];
      if (a == 0.0) continue;
      b -= a * map[j].offset;
      r.a[map[j].plus] += a;
      if (map[j].minus >= 0) r.a[map[j].minus] -= a;
    }
    if (c.relation == LpRelation::greater_equal) {
      for (double& v : r.a) v = -v;
      b = -b;
    }
    r.equality = c.relation == LpRelation::equal;
    r.b = b;
    rows.push_back(std::move(r));
  }
  for (auto [col, ub] : upper_rows) {
    StdRow r;
    r.a.assign(ncols, 0.0);
    r.a[col] = 1.0;
    r.b = ub;
    rows.push_back(std::move(r));
  }

  for (auto [j, ub] : split_upper_rows) {
    StdRow r;
    r.a.assign(ncols, 0.0);
    r.a[map[j].plus] = 1.0;
    r.a[map[j].minus] = -1.0;
    r.b = ub;
    rows.push_back(std::move(r));
  }

  const std::size_t m = rows.size();
  std::size_t nslack = 0;
  for (const auto& r : rows)
    if (!r.equality) ++nslack;
  std::size_t nart = 0;
  for (const auto& r : rows)
    if (r.equality || r.b < 0) ++nart;
  const std::size_t cols = ncols + nslack + nart;
  Tableau t(m, cols);
  std::size_t s = ncols, art = ncols + nslack;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& r = rows[i];
    const double sign = r.b < 0 ? -1.0 : 1.0;
    for (int j = 0; j < ncols; ++j) t.at(i, j) = sign * r.a[j];
    t.rhs(i) = sign * r.b;
    if (!r.equality) {
      t.at(i, s) = sign;
      if (sign > 0) t.basis()[i] = static_cast<int>(s);
      ++s;
    }
    if (t.basis()[i] < 0) {
      t.at(i, art) = 1.0;
      t.basis()[i] = static_cast<int>(art);
      ++art;
    }
  }

  std::vector<bool> active(m, true);
  std::vector<bool> allowed(cols, true);
  const std::size_t first_art = ncols + nslack;
  if (nart > 0) {
    std::vector<double> c1(cols, 0.0);
    for (std::size_t j = first_art; j < cols; ++j) c1[j] = -1.0;
    t.price(c1);
    run(t, allowed, active, options_, sol.pivots);
    if (-t.z(cols) > options_.feasibility_tolerance) {
      sol.status = LpStatus::infeasible;
      return sol;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis()[i] < static_cast<int>(first_art)) continue;
      int k = -1;
      double best = options_.pivot_tolerance;
      for (std::size_t j = 0; j < first_art; ++j)
        if (std::abs(t.at(i, j)) > best) {
          best = std::abs(t.at(i, j));
          k = static_cast<int>(j);
        }
      if (k >= 0) {
        t.pivot(i, k);
      } else {
        active[i] = false;  // redundant row
      }
    }
    for (std::size_t j = first_art; j < cols; ++j) allowed[j] = false;
  }

  std::vector<double> c2(cols, 0.0);
  const double dir = lp.sense == LpSense::maximize ? 1.0 : -1.0;
  for (std::size_t j = 0; j < nv; ++j) {
    const double cj = dir * lp.objective[j];
    c2[map[j].plus] += cj;
    if (map[j].minus >= 0) c2[map[j].minus] -= cj;
  }
  t.price(c2);
  if (run(t, allowed, active, options_, sol.pivots) == Outcome::unbounded) {
    sol.status = LpStatus::unbounded;
    return sol;
  }

  std::vector<double> y(cols, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (active[i]) y[t.basis()[i]] = t.rhs(i);
  sol.x.assign(nv, 0.0);
  for (std::size_t j = 0; j < nv; ++j) {
    sol.x[j] = map[j].offset + y[map[j].plus];
    if (map[j].minus >= 0) sol.x[j] -= y[map[j].minus];
  }
  sol.objective = 0.0;
  for (std::size_t j = 0; j < nv; ++j) sol.objective += lp.objective[j] * sol.x[j];
  sol.status = LpStatus::optimal;
  const double viol = constraint_violation(lp, sol.x);
  if (viol > options_.feasibility_tolerance)
    throw LpDegeneracyError("simplex basis is numerically unreliable (violation " + std::to_string(viol) + ")");
  return sol;
}

const LpSolver& default_solver() {
  static const SimplexSolver solver;
  return solver;
}

namespace {

Eigen::MatrixXd to_eigen(const std::vector<std::vector<double>>& rows, std::size_t n) {
  Eigen::MatrixXd m(rows.size(), n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != n) throw std::invalid_argument("row size mismatch");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

}  // namespace

Matrix<double> nullspace_basis(const std::vector<std::vector<double>>& e, std::size_t n, double tol) {
  if (e.empty()) {
    Matrix<double> id(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) id(i, i) = 1.0;
    return id;
  }
  const Eigen::MatrixXd a = to_eigen(e, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  std::size_t rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > cut) ++rank;
  const std::size_t d = n - rank;
  Matrix<double> out(n, d);
  const Eigen::MatrixXd& v = svd.matrixV();
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < n; ++i) out(i, k) = v(i, rank + k);
  return out;
}

std::vector<double> particular_solution(const std::vector<std::vector<double>>& e, const std::vector<double>& f,
                                        std::size_t n) {
  std::vector<double> x(n, 0.0);
  if (e.empty()) return x;
  const Eigen::MatrixXd a = to_eigen(e, n);
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(f.data(), f.size());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  const Eigen::VectorXd sol = svd.solve(b);
  const double residual = (a * sol - b).cwiseAbs().maxCoeff();
  if (residual > 1e-9 * (1.0 + b.cwiseAbs().maxCoeff())) throw EmptyPolytopeError("equality constraints are inconsistent");
  for (std::size_t i = 0; i < n; ++i) x[i] = sol(i);
  return x;
}

ChebyshevCenter chebyshev_center(const Polytope& poly, const LpSolver& solver, double radius_cap) {
  const std::size_t n = poly.dimension;
  const auto x0 = particular_solution(poly.e, poly.f, n);
  const Matrix<double> basis = nullspace_basis(poly.e, n);
  const std::size_t d = basis.cols();

  // Reduced inequalities over z with y = x0 + N z.
  LinearProgram lp(d + 1);
  lp.objective[d] = 1.0;
  lp.bound(d, -kInfinity, radius_cap);
  for (std::size_t k = 0; k < poly.a.size(); ++k) {
    const auto& row = poly.a[k];
    std::vector<double> g(d + 1, 0.0);
    double h = poly.b[k];
    for (std::size_t i = 0; i < n; ++i) h -= row[i] * x0[i];
    double norm = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
      for (std::size_t i = 0; i < n; ++i) g[c] += row[i] * basis(i, c);
      norm += g[c] * g[c];
    }
    norm = std::sqrt(norm);
    if (norm <= 1e-12) {
      if (h < -1e-9) throw EmptyPolytopeError("polytope is empty");
      continue;
    }
    g[d] = norm;
    lp.add(std::move(g), LpRelation::less_equal, h);
  }
  ChebyshevCenter out;
  if (d == 0) {
    out.point = x0;
    return out;
  }
  const LpSolution s = solver.solve(lp);
  if (s.status == LpStatus::infeasible) throw EmptyPolytopeError("polytope is empty");
  if (s.status != LpStatus::optimal) throw LpDegeneracyError("Chebyshev center LP did not reach an optimum");
  if (s.x[d] < -1e-9) throw EmptyPolytopeError("polytope is empty");
  out.radius = s.x[d];
  out.point = x0;
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t i = 0; i < n; ++i) out.point[i] += basis(i, c) * s.x[c];
  return out;
}

}  // namespace ldc
