#include "ldc/kernels.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ldc::kernels {

namespace {

void check_forms(const Matrix<double>& samples, const std::vector<LinearForm>& forms) {
  for (const auto& f : forms)
    if (f.coefficients.size() != samples.cols()) throw std::invalid_argument("form size does not match samples");
}

inline void evaluate_row(const Matrix<double>& samples, const std::vector<LinearForm>& forms, std::size_t s,
                         Matrix<double>& out) {
  const auto theta = samples.row(s);
  for (std::size_t a = 0; a < forms.size(); ++a) {
    double v = forms[a].constant;
    const auto& c = forms[a].coefficients;
    for (std::size_t k = 0; k < theta.size(); ++k) v += c[k] * theta[k];
    out(s, a) = v;
  }
}

RankCounts empty_counts(std::size_t alternatives) {
  return {0, Matrix<std::uint64_t>(alternatives, alternatives, 0), Matrix<std::uint64_t>(alternatives, alternatives, 0),
          Matrix<std::uint64_t>(alternatives, alternatives, 0)};
}

inline void accumulate_row(std::span<const double> v, double tol, RankCounts& c) {
  const std::size_t n = v.size();
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t better = 0;
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a) continue;
      const double d = v[a] - v[b];
      if (d > tol) {
        ++c.wins(a, b);
      } else if (d < -tol) {
        ++better;
      } else {
        ++c.ties(a, b);
      }
    }
    ++c.rank(a, better);
  }
  ++c.samples;
}

void merge(RankCounts& into, const RankCounts& from) {
  into.samples += from.samples;
  for (std::size_t k = 0; k < into.rank.data().size(); ++k) {
    into.rank.data()[k] += from.rank.data()[k];
    into.wins.data()[k] += from.wins.data()[k];
    into.ties.data()[k] += from.ties.data()[k];
  }
}

}  // namespace

Matrix<double> evaluate_serial(const Matrix<double>& samples, const std::vector<LinearForm>& forms) {
  check_forms(samples, forms);
  Matrix<double> out(samples.rows(), forms.size());
  for (std::size_t s = 0; s < samples.rows(); ++s) evaluate_row(samples, forms, s, out);
  return out;
}

Matrix<double> evaluate_parallel(const Matrix<double>& samples, const std::vector<LinearForm>& forms) {
  check_forms(samples, forms);
  Matrix<double> out(samples.rows(), forms.size());
  const auto rows = static_cast<std::int64_t>(samples.rows());
#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < rows; ++s) evaluate_row(samples, forms, static_cast<std::size_t>(s), out);
  return out;
}

RankCounts accumulate_serial(const Matrix<double>& values, double tie_tolerance) {
  RankCounts c = empty_counts(values.cols());
  for (std::size_t s = 0; s < values.rows(); ++s) accumulate_row(values.row(s), tie_tolerance, c);
  return c;
}

RankCounts accumulate_parallel(const Matrix<double>& values, double tie_tolerance) {
  RankCounts total = empty_counts(values.cols());
  const auto rows = static_cast<std::int64_t>(values.rows());
#pragma omp parallel
  {
    RankCounts local = empty_counts(values.cols());
#pragma omp for schedule(static) nowait
    for (std::int64_t s = 0; s < rows; ++s) accumulate_row(values.row(static_cast<std::size_t>(s)), tie_tolerance, local);
#pragma omp critical(ldc_rank_merge)
    merge(total, local);
  }
  return total;
}

}  // namespace ldc::kernels
