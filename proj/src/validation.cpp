#include "gsdr/validation.hpp"

#include <cmath>
#include <memory>
#include <numeric>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "gsdr/densities.hpp"
#include "gsdr/random.hpp"

namespace gsdr {

namespace {

constexpr double kTableTolerance = 1e-12;

double total(const std::vector<std::vector<double>>& table) {
  double s = 0.0;
  for (const auto& row : table) s = std::accumulate(row.begin(), row.end(), s);
  return s;
}

}  // namespace

void DiscreteNestedSpec::validate() const {
  const std::size_t nt = theta_labels.size();
  const std::size_t np = psi_labels.size();
  if (nt == 0 || np == 0) throw std::invalid_argument("supports must be non-empty");
  if (theta0 >= nt) throw std::invalid_argument("theta0 is not in the theta support");
  if (prior1.size() != nt || likelihood.size() != nt || prior0.size() != np) {
    throw std::invalid_argument("table shapes do not match the supports");
  }
  for (std::size_t t = 0; t < nt; ++t) {
    if (prior1[t].size() != np || likelihood[t].size() != np) {
      throw std::invalid_argument("table shapes do not match the supports");
    }
    for (std::size_t p = 0; p < np; ++p) {
      if (!(prior1[t][p] >= 0.0)) throw std::invalid_argument("prior1 entries must be >= 0");
      if (!(likelihood[t][p] > 0.0) || !std::isfinite(likelihood[t][p])) {
        throw std::invalid_argument("likelihood entries must be positive and finite");
      }
    }
  }
  for (double p : prior0) {
    if (!(p >= 0.0)) throw std::invalid_argument("prior0 entries must be >= 0");
  }
  if (std::abs(total(prior1) - 1.0) > kTableTolerance) {
    throw std::invalid_argument("prior1 does not sum to 1");
  }
  if (std::abs(std::accumulate(prior0.begin(), prior0.end(), 0.0) - 1.0) > kTableTolerance) {
    throw std::invalid_argument("prior0 does not sum to 1");
  }
}

std::vector<double> DiscreteNestedSpec::theta_marginal() const {
  std::vector<double> out;
  out.reserve(prior1.size());
  for (const auto& row : prior1) out.push_back(std::accumulate(row.begin(), row.end(), 0.0));
  return out;
}

DiscreteNestedSpec two_by_two_spec() {
  DiscreteNestedSpec spec;
  spec.theta_labels = {"theta0", "theta1"};
  spec.theta0 = 0;
  spec.psi_labels = {"a", "b"};
  spec.prior1 = {{0.25, 0.25}, {0.25, 0.25}};
  spec.prior0 = {0.5, 0.5};
  spec.likelihood = {{2.0, 1.0}, {1.0, 1.0}};
  return spec;
}

double discrete_exact_bayes_factor(const DiscreteNestedSpec& spec) {
  spec.validate();
  double m0 = 0.0;
  for (std::size_t p = 0; p < spec.psi_labels.size(); ++p) {
    m0 += spec.likelihood[spec.theta0][p] * spec.prior0[p];
  }
  double m1 = 0.0;
  for (std::size_t t = 0; t < spec.theta_labels.size(); ++t) {
    for (std::size_t p = 0; p < spec.psi_labels.size(); ++p) {
      m1 += spec.likelihood[t][p] * spec.prior1[t][p];
    }
  }
  if (!(m1 > 0.0)) throw std::domain_error("complex-model marginal likelihood is zero");
  return m0 / m1;
}

DiscreteTerms discrete_exact_terms(const DiscreteNestedSpec& spec) {
  spec.validate();
  const std::vector<double> theta_mass = spec.theta_marginal();
  if (!(theta_mass[spec.theta0] > 0.0)) {
    throw std::domain_error("theta0 must have positive prior mass");
  }
  double m1 = 0.0;
  double m_aux = 0.0;
  double aux_at_theta0 = 0.0;
  for (std::size_t t = 0; t < spec.theta_labels.size(); ++t) {
    for (std::size_t p = 0; p < spec.psi_labels.size(); ++p) {
      const double l = spec.likelihood[t][p];
      m1 += l * spec.prior1[t][p];
      const double aux = l * theta_mass[t] * spec.prior0[p];
      m_aux += aux;
      if (t == spec.theta0) aux_at_theta0 += aux;
    }
  }
  if (!(m1 > 0.0) || !(m_aux > 0.0)) throw std::domain_error("marginal likelihood is zero");
  return DiscreteTerms{(aux_at_theta0 / m_aux) / theta_mass[spec.theta0], m_aux / m1};
}

namespace {

/// Exact sampler over a (theta, psi) table with the given unnormalized weights.
SamplerFactory<DiscreteDraw> table_sampler(const std::vector<std::vector<double>>& weights) {
  const std::size_t np = weights.front().size();
  std::vector<double> flat;
  for (const auto& row : weights) flat.insert(flat.end(), row.begin(), row.end());
  return [flat, np](std::uint64_t seed) -> DrawStream<DiscreteDraw> {
    auto rng = std::make_shared<Rng>(make_rng(seed));
    auto dist = std::make_shared<std::discrete_distribution<std::size_t>>(flat.begin(), flat.end());
    return [rng, dist, np] {
      const std::size_t cell = (*dist)(*rng);
      return DiscreteDraw{cell / np, cell % np};
    };
  };
}

}  // namespace

NestedProblem<DiscreteDraw> discrete_problem_adapter(const DiscreteNestedSpec& spec) {
  spec.validate();
  const std::size_t nt = spec.theta_labels.size();
  const std::size_t np = spec.psi_labels.size();
  const std::vector<double> theta_mass = spec.theta_marginal();
  if (!(theta_mass[spec.theta0] > 0.0)) {
    throw std::domain_error("theta0 must have positive prior mass");
  }

  std::vector<std::vector<double>> aux_post(nt, std::vector<double>(np));
  std::vector<std::vector<double>> full_post(nt, std::vector<double>(np));
  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t p = 0; p < np; ++p) {
      aux_post[t][p] = spec.likelihood[t][p] * theta_mass[t] * spec.prior0[p];
      full_post[t][p] = spec.likelihood[t][p] * spec.prior1[t][p];
    }
  }

  // Left: P~(theta0 | psi, x) / P(theta0) = L(theta0, psi) / sum_t L(t, psi) P(t).
  std::vector<double> left_table(np);
  for (std::size_t p = 0; p < np; ++p) {
    double norm = 0.0;
    for (std::size_t t = 0; t < nt; ++t) norm += spec.likelihood[t][p] * theta_mass[t];
    left_table[p] = spec.likelihood[spec.theta0][p] / norm;
  }

  NestedProblem<DiscreteDraw> problem;
  problem.aux_posterior_sampler = table_sampler(aux_post);
  problem.full_posterior_sampler = table_sampler(full_post);
  problem.left_evaluator = [left_table](const DiscreteDraw& d) { return left_table[d.psi]; };
  // Right: pi0(psi) / pi1(psi | theta) = pi0(psi) P(theta) / pi1(theta, psi).
  problem.right_evaluator = [spec, theta_mass](const DiscreteDraw& d) {
    return spec.prior0[d.psi] * theta_mass[d.theta] / spec.prior1[d.theta][d.psi];
  };
  return problem;
}

// ---------------------------------------------------------------------------

void GaussianNestedSpec::validate() const {
  if (!(sigma2 > 0.0) || !(tau_theta2 > 0.0) || !(tau_psi2 > 0.0)) {
    throw std::invalid_argument("variances must be positive");
  }
  if (!(std::abs(rho) < 1.0)) throw std::invalid_argument("|rho| must be < 1");
  for (double x : data) {
    if (!std::isfinite(x)) throw std::invalid_argument("data must be finite");
  }
}

double gaussian_exact_bayes_factor(const GaussianNestedSpec& spec) {
  spec.validate();
  if (spec.n() == 0) return 1.0;
  const double n = static_cast<double>(spec.n());
  const double xbar = std::accumulate(spec.data.begin(), spec.data.end(), 0.0) / n;
  const double noise = spec.sigma2 / n;
  const double cov = spec.rho * std::sqrt(spec.tau_theta2 * spec.tau_psi2);
  // Only the sample mean carries information about theta + psi; the
  // within-sample factor is common to both marginals and cancels.
  const double log_m0 = log_normal_pdf(xbar, spec.theta0 + spec.mean_psi, noise + spec.tau_psi2);
  const double log_m1 = log_normal_pdf(xbar, spec.mean_theta + spec.mean_psi,
                                       noise + spec.tau_theta2 + spec.tau_psi2 + 2.0 * cov);
  return std::exp(log_m0 - log_m1);
}

namespace {

struct BivariatePosterior {
  Eigen::Vector2d mean;
  Eigen::Matrix2d cov;
  Eigen::Matrix2d chol;
};

BivariatePosterior bivariate_posterior(const GaussianNestedSpec& spec, double rho) {
  const double cov_tp = rho * std::sqrt(spec.tau_theta2 * spec.tau_psi2);
  Eigen::Matrix2d prior_cov;
  prior_cov << spec.tau_theta2, cov_tp, cov_tp, spec.tau_psi2;
  const Eigen::Vector2d prior_mean(spec.mean_theta, spec.mean_psi);

  const Eigen::Matrix2d prior_prec = prior_cov.inverse();
  const double n = static_cast<double>(spec.n());
  const double sum = std::accumulate(spec.data.begin(), spec.data.end(), 0.0);
  Eigen::Matrix2d prec = prior_prec;
  prec.array() += n / spec.sigma2;
  const Eigen::Vector2d rhs = prior_prec * prior_mean + Eigen::Vector2d::Constant(sum / spec.sigma2);

  BivariatePosterior out;
  out.cov = prec.inverse();
  out.mean = out.cov * rhs;
  Eigen::LLT<Eigen::Matrix2d> llt(out.cov);
  if (llt.info() != Eigen::Success || !out.cov.allFinite()) {
    throw std::domain_error("posterior covariance is singular");
  }
  out.chol = llt.matrixL();
  return out;
}

SamplerFactory<GaussianDraw> bivariate_sampler(const BivariatePosterior& post) {
  return [post](std::uint64_t seed) -> DrawStream<GaussianDraw> {
    auto rng = std::make_shared<Rng>(make_rng(seed));
    return [rng, post] {
      const Eigen::Vector2d z(sample_normal(*rng, 0.0, 1.0), sample_normal(*rng, 0.0, 1.0));
      const Eigen::Vector2d v = post.mean + post.chol * z;
      return GaussianDraw{v[0], v[1]};
    };
  };
}

}  // namespace

double gaussian_savage_dickey_ratio(const GaussianNestedSpec& spec) {
  spec.validate();
  const BivariatePosterior post = bivariate_posterior(spec, spec.rho);
  return std::exp(log_normal_pdf(spec.theta0, post.mean[0], post.cov(0, 0)) -
                  log_normal_pdf(spec.theta0, spec.mean_theta, spec.tau_theta2));
}

NestedProblem<GaussianDraw> gaussian_problem_adapter(const GaussianNestedSpec& spec) {
  spec.validate();
  const double n = static_cast<double>(spec.n());
  const double sum = std::accumulate(spec.data.begin(), spec.data.end(), 0.0);

  NestedProblem<GaussianDraw> problem;
  problem.aux_posterior_sampler = bivariate_sampler(bivariate_posterior(spec, 0.0));
  problem.full_posterior_sampler = bivariate_sampler(bivariate_posterior(spec, spec.rho));

  // Under the auxiliary prior theta | psi, x is normal with x_i - psi as data.
  const double cond_prec = 1.0 / spec.tau_theta2 + n / spec.sigma2;
  problem.left_evaluator = [spec, n, sum, cond_prec](const GaussianDraw& d) {
    const double mean = (spec.mean_theta / spec.tau_theta2 + (sum - n * d.psi) / spec.sigma2) /
                        cond_prec;
    return std::exp(log_normal_pdf(spec.theta0, mean, 1.0 / cond_prec) -
                    log_normal_pdf(spec.theta0, spec.mean_theta, spec.tau_theta2));
  };

  const double slope = spec.rho * std::sqrt(spec.tau_psi2 / spec.tau_theta2);
  const double cond_var = spec.tau_psi2 * (1.0 - spec.rho * spec.rho);
  problem.right_evaluator = [spec, slope, cond_var](const GaussianDraw& d) {
    const double cond_mean = spec.mean_psi + slope * (d.theta - spec.mean_theta);
    return std::exp(log_normal_pdf(d.psi, spec.mean_psi, spec.tau_psi2) -
                    log_normal_pdf(d.psi, cond_mean, cond_var));
  };
  return problem;
}

}  // namespace gsdr
