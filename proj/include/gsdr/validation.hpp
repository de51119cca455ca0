// Exactly solvable nested models for checking the estimator end to end.

#ifndef GSDR_VALIDATION_HPP
#define GSDR_VALIDATION_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "gsdr/sdr.hpp"

namespace gsdr {

// ---------------------------------------------------------------------------
// Finite discrete model. The datum is fixed and folded into the likelihood
// table, so everything reduces to finite sums. theta0 has positive prior mass.

struct DiscreteNestedSpec {
  std::vector<std::string> theta_labels;
  std::size_t theta0 = 0;  ///< index into theta_labels
  std::vector<std::string> psi_labels;
  std::vector<std::vector<double>> prior1;      ///< [theta][psi], sums to 1
  std::vector<double> prior0;                   ///< [psi], sums to 1
  std::vector<std::vector<double>> likelihood;  ///< [theta][psi], all > 0

  /// Throws std::invalid_argument when a table is malformed.
  void validate() const;
  /// Marginal prior mass of each theta under prior1.
  std::vector<double> theta_marginal() const;
};

struct DiscreteTerms {
  double left = 0.0;
  double right = 0.0;
};

/// theta in {theta0, theta1}, psi in {a, b}, uniform prior1, prior0 = (1/2, 1/2),
/// likelihood [[2, 1], [1, 1]]. Its Bayes factor is 1.2.
DiscreteNestedSpec two_by_two_spec();

/// [sum_psi L(theta0, psi) pi0(psi)] / [sum_{theta, psi} L(theta, psi) pi1(theta, psi)].
double discrete_exact_bayes_factor(const DiscreteNestedSpec& spec);

/// left = P~(theta0 | x) / P(theta0), right = m~(x) / m(x), where ~ marks the
/// separable auxiliary prior pi1(theta) pi0(psi).
DiscreteTerms discrete_exact_terms(const DiscreteNestedSpec& spec);

struct DiscreteDraw {
  std::size_t theta = 0;
  std::size_t psi = 0;
};

/// Exact independent draws from both posteriors; evaluators from the exact
/// conditional tables.
NestedProblem<DiscreteDraw> discrete_problem_adapter(const DiscreteNestedSpec& spec);

// ---------------------------------------------------------------------------
// Linear-Gaussian model: x_i = theta + psi + N(0, sigma2). The complex model
// has a bivariate normal prior with correlation rho; the simple model fixes
// theta = theta0 and keeps the psi-marginal as its nuisance prior.

struct GaussianNestedSpec {
  double sigma2 = 1.0;
  double tau_theta2 = 1.0;
  double tau_psi2 = 1.0;
  double rho = 0.0;
  double theta0 = 0.0;
  double mean_theta = 0.0;
  double mean_psi = 0.0;
  std::vector<double> data;

  std::size_t n() const { return data.size(); }
  void validate() const;
};

double gaussian_exact_bayes_factor(const GaussianNestedSpec& spec);

/// Posterior over prior theta-density at theta0 under the complex model. Equals
/// the Bayes factor when rho = 0.
double gaussian_savage_dickey_ratio(const GaussianNestedSpec& spec);

struct GaussianDraw {
  double theta = 0.0;
  double psi = 0.0;
};

NestedProblem<GaussianDraw> gaussian_problem_adapter(const GaussianNestedSpec& spec);

}  // namespace gsdr

#endif  // GSDR_VALIDATION_HPP
