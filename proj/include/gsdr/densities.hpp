// Log densities shared by the samplers and evaluators.

#ifndef GSDR_DENSITIES_HPP
#define GSDR_DENSITIES_HPP

namespace gsdr {

/// Reentrant log|Gamma(x)|.
double log_gamma(double x);

/// Log density of Gamma(shape, rate) at x > 0.
double log_gamma_pdf(double x, double shape, double rate);

double log_normal_pdf(double x, double mean, double variance);

/// log(exp(a) + exp(b)) without overflow.
double log_add(double a, double b);

}  // namespace gsdr

#endif  // GSDR_DENSITIES_HPP
