// Oracle-backed verification suites. Each check reports a metric and the
// threshold it is held to; the unit tests, the acceptance binary and the
// `selftest` subcommand all run the same code.

#ifndef GSDR_CHECKS_HPP
#define GSDR_CHECKS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gsdr/dp_mixture.hpp"
#include "gsdr/validation.hpp"

namespace gsdr::checks {

struct CheckResult {
  std::string name;
  bool passed = false;
  double metric = 0.0;
  double threshold = 0.0;
  std::string detail;
};

bool all_passed(const std::vector<CheckResult>& results);

/// Non-separable 3x3 discrete spec used alongside the 2x2 example.
DiscreteNestedSpec three_by_three_spec();

/// Random valid discrete spec; prior1 is generally non-separable.
DiscreteNestedSpec random_discrete_spec(Rng& rng, std::size_t n_theta, std::size_t n_psi);

GaussianNestedSpec reference_gaussian_spec(double rho);

std::vector<CheckResult> discrete_suite(std::uint64_t seed);
std::vector<CheckResult> gaussian_suite(std::uint64_t seed);
std::vector<CheckResult> polya_suite();
std::vector<CheckResult> conditionals_suite(std::uint64_t seed);

// Individual conditional checks (each TV threshold 0.01 at 1e5 draws).
CheckResult check_alpha_kernel(std::uint64_t seed, std::size_t draws = 100000);
CheckResult check_alpha_prime_chain(std::uint64_t seed, std::size_t draws = 100000);
CheckResult check_alpha_prime_invariance(std::uint64_t seed, std::size_t draws = 100000);
CheckResult check_alpha_full(std::uint64_t seed, std::size_t draws = 100000,
                             std::size_t thinning = 10);
CheckResult check_alpha_full_large_k(std::uint64_t seed, std::size_t draws = 100000,
                                     std::size_t thinning = 10);
/// One result per outcome (two existing clusters and a new one).
std::vector<CheckResult> check_mu_frequencies(std::uint64_t seed, std::size_t draws = 100000);

struct GewekeMoment {
  std::string quantity;
  double forward_mean = 0.0;
  double chain_mean = 0.0;
  double std_error = 0.0;  ///< combined forward + batch-means error
  double z = 0.0;
};

/// Successive-conditional test at n observations: compares means of alpha,
/// alpha' (auxiliary only) and d against forward prior simulation.
std::vector<GewekeMoment> geweke_moments(DpModel model, std::size_t n, std::size_t sweeps,
                                         std::uint64_t seed);
std::vector<CheckResult> geweke_suite(DpModel model, std::size_t n, std::size_t sweeps,
                                      std::uint64_t seed);

/// Slope of log RMS error against log N over N in {1e3, 1e4, 1e5}.
double discrete_convergence_slope(std::uint64_t seed, std::size_t reps);
double gaussian_convergence_slope(std::uint64_t seed, std::size_t reps);

}  // namespace gsdr::checks

#endif  // GSDR_CHECKS_HPP
