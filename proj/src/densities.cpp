#include "gsdr/densities.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace gsdr {

double log_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double log_gamma_pdf(double x, double shape, double rate) {
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  return shape * std::log(rate) - log_gamma(shape) + (shape - 1.0) * std::log(x) - rate * x;
}

double log_normal_pdf(double x, double mean, double variance) {
  const double z = x - mean;
  return -0.5 * (std::log(2.0 * std::numbers::pi * variance) + z * z / variance);
}

double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

}  // namespace gsdr
