#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace ldc {

/// Affine function constant + coefficients . theta over the flat LDC parameters.
struct LinearForm {
  std::vector<double> coefficients;
  double constant = 0.0;

  explicit LinearForm(std::size_t size = 0, double c = 0.0) : coefficients(size, 0.0), constant(c) {}

  double operator()(std::span<const double> theta) const {
    if (theta.size() != coefficients.size()) throw std::invalid_argument("parameter size mismatch");
    double v = constant;
    for (std::size_t k = 0; k < theta.size(); ++k) v += coefficients[k] * theta[k];
    return v;
  }

  LinearForm& operator+=(const LinearForm& o) {
    for (std::size_t k = 0; k < coefficients.size(); ++k) coefficients[k] += o.coefficients[k];
    constant += o.constant;
    return *this;
  }
  LinearForm& operator-=(const LinearForm& o) {
    for (std::size_t k = 0; k < coefficients.size(); ++k) coefficients[k] -= o.coefficients[k];
    constant -= o.constant;
    return *this;
  }
  LinearForm& operator*=(double s) {
    for (double& c : coefficients) c *= s;
    constant *= s;
    return *this;
  }
  friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
  friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
  friend LinearForm operator*(double s, LinearForm a) { return a *= s; }
  friend LinearForm operator-(LinearForm a) { return a *= -1.0; }
};

}  // namespace ldc
