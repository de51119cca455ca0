// Reference computations used to check the samplers and estimators. Nothing
// here calls into the code under test: every quantity is recomputed from its
// definition (enumeration, dense grids, quadrature, extended precision).

#ifndef GSDR_ORACLES_HPP
#define GSDR_ORACLES_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "gsdr/validation.hpp"

namespace gsdr::oracle {

/// Piecewise-constant discretization of an unnormalized density on (lo, hi].
class GridDensity {
 public:
  GridDensity(const std::function<double(double)>& log_density, double lo, double hi,
              std::size_t cells);

  double cdf(double x) const;
  double quantile(double p) const;
  double mean() const { return mean_; }
  double variance() const { return variance_; }

  /// Interior edges splitting the mass into `bins` equal parts.
  std::vector<double> equal_mass_edges(std::size_t bins) const;

  /// Total-variation distance between the binned empirical distribution of
  /// `samples` and the grid mass over the same bins.
  double tv_distance(std::span<const double> samples, std::size_t bins) const;

 private:
  double lo_;
  double width_;
  std::vector<double> cum_;  // cum_[c] = mass of cells [0, c)
  double mean_ = 0.0;
  double variance_ = 0.0;
};

/// TV distance between two samples binned on the same edges.
double binned_tv(std::span<const double> a, std::span<const double> b,
                 std::span<const double> edges);

/// Every set partition of {0..n-1} as a restricted growth string.
std::vector<std::vector<std::size_t>> enumerate_partitions(std::size_t n);

/// Probability of an assignment sequence under the sequential Polya urn
/// (Chinese restaurant process) with concentration alpha.
double urn_sequence_probability(std::span<const std::size_t> assignment, double alpha);

std::size_t count_blocks(std::span<const std::size_t> assignment);

/// Gamma(shape, rate) density at x evaluated with 50 decimal digits.
double extended_gamma_density_ratio(double x, double shape_num, double rate_num, double shape_den,
                                    double rate_den);

/// B01 of the linear-Gaussian model by adaptive Gauss-Kronrod integration of
/// the defining one- and two-dimensional integrals.
double gaussian_quadrature_bayes_factor(const GaussianNestedSpec& spec);

/// Bayes factor of a discrete spec by direct summation of the joint tables.
double discrete_brute_force_bayes_factor(const DiscreteNestedSpec& spec);

/// Standard error of a chain mean by non-overlapping batch means.
double batch_means_std_error(std::span<const double> chain, std::size_t batches = 50);

double sample_mean(std::span<const double> xs);
double sample_variance(std::span<const double> xs);

/// Least-squares slope of y against x.
double fitted_slope(std::span<const double> x, std::span<const double> y);

}  // namespace gsdr::oracle

#endif  // GSDR_ORACLES_HPP
