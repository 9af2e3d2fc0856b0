/// Choquet integral and its level dependent generalizations.
#pragma once

#include <span>
#include <vector>

#include "ldc/linear_form.hpp"
#include "ldc/model.hpp"

namespace ldc {

/// Choquet integral with respect to a single capacity. Uses the Moebius
/// closed form sum_B m(B) min_{i in B} x_i.
double choquet(std::span<const double> x, const MobiusCapacity& m);

/// Same integral by ordering: sum_i mu(N_i) (x_(i) - x_(i-1)) with x_(0) = 0,
/// ties broken by criterion index.
double choquet_sorted(std::span<const double> x, const MobiusCapacity& m);

/// min_{i in B} x_i for every term of the layout.
std::vector<double> term_minima(std::span<const double> x, const std::vector<Subset>& terms);

/// Slices of x on the subintervals: x^r_i = clamp(x_i - a_{r-1}, 0, a_r - a_{r-1}).
/// Result is p x n, row r-1 holding slice r.
Matrix<double> slice(std::span<const double> x, const Scale& scale);

/// Interval LDC Choquet integral: a_0 + sum_r Ch(x^r, mu_r).
double ildc(std::span<const double> x, const LevelDependentCapacity& ldc);

/// Ordinal-sum form a_0 + sum_r (Ch(xt^r, mu_r) - a_{r-1}) with xt^r = clamp(x, a_{r-1}, a_r).
double ildc_ordinal_sum(std::span<const double> x, const LevelDependentCapacity& ldc);

/// mu^L(E, t): the capacity of the interval holding t, or for the piecewise-linear
/// variant the interpolation between the neighbouring breakpoints.
double capacity_at_level(const LevelDependentCapacity& ldc, Subset e, double t);

/// Piecewise-linear LDC Choquet integral, exact trapezoid sums.
double pldc(std::span<const double> x, const LevelDependentCapacity& ldc);

/// Dispatches on the LDC variant.
double level_dependent_choquet(std::span<const double> x, const LevelDependentCapacity& ldc);

/// The integral as an affine function of the flat Moebius parameters.
/// Throws std::out_of_range when x leaves the scale.
LinearForm choquet_form(std::span<const double> x, const LdcLayout& layout);

/// Midpoint-rule quadrature of alpha + int_alpha^beta mu^L({i : x_i >= t}, t) dt with the
/// breakpoints as panel boundaries. Independent numeric reference for tests.
double ldc_quadrature_oracle(std::span<const double> x, const LevelDependentCapacity& ldc,
                             std::size_t steps = 1000000);

}  // namespace ldc
