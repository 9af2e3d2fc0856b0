/// Data-parallel SMAA kernels. Each has a serial reference and an OpenMP
/// version; both produce identical results.
#pragma once

#include <cstdint>
#include <vector>

#include "ldc/linear_form.hpp"
#include "ldc/matrix.hpp"

namespace ldc::kernels {

/// values(s, a) = forms[a](samples.row(s)).
Matrix<double> evaluate_serial(const Matrix<double>& samples, const std::vector<LinearForm>& forms);
Matrix<double> evaluate_parallel(const Matrix<double>& samples, const std::vector<LinearForm>& forms);

/// Integer occurrence counts over the samples. rank(a, s-1) counts samples with
/// rank(a) = s where rank(a) = 1 + #{c : v_c > v_a + tol}; wins(a, c) counts
/// v_a > v_c + tol; ties(a, c) counts |v_a - v_c| <= tol.
struct RankCounts {
  std::size_t samples = 0;
  Matrix<std::uint64_t> rank;
  Matrix<std::uint64_t> wins;
  Matrix<std::uint64_t> ties;
};

RankCounts accumulate_serial(const Matrix<double>& values, double tie_tolerance);
RankCounts accumulate_parallel(const Matrix<double>& values, double tie_tolerance);

}  // namespace ldc::kernels
