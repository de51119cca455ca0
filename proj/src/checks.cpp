#include "gsdr/checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "gsdr/oracles.hpp"
#include "gsdr/random.hpp"
#include "gsdr/sdr.hpp"

namespace gsdr::checks {

namespace {

CheckResult at_most(std::string name, double metric, double threshold, std::string detail = {}) {
  return CheckResult{std::move(name), metric <= threshold, metric, threshold, std::move(detail)};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

// Unnormalized log Gamma(shape, rate) density, written out independently of
// the library's density helpers.
double log_gamma_kernel(double x, double shape, double rate) {
  return (shape - 1.0) * std::log(x) - rate * x;
}

}  // namespace

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

DiscreteNestedSpec three_by_three_spec() {
  DiscreteNestedSpec spec;
  spec.theta_labels = {"t0", "t1", "t2"};
  spec.theta0 = 0;
  spec.psi_labels = {"p0", "p1", "p2"};
  spec.prior1 = {{0.10, 0.05, 0.15}, {0.20, 0.10, 0.05}, {0.05, 0.20, 0.10}};
  spec.prior0 = {0.5, 0.3, 0.2};
  spec.likelihood = {{3.0, 1.0, 0.5}, {1.0, 2.0, 1.5}, {0.5, 0.5, 4.0}};
  return spec;
}

DiscreteNestedSpec random_discrete_spec(Rng& rng, std::size_t n_theta, std::size_t n_psi) {
  DiscreteNestedSpec spec;
  for (std::size_t t = 0; t < n_theta; ++t) spec.theta_labels.push_back("t" + std::to_string(t));
  for (std::size_t p = 0; p < n_psi; ++p) spec.psi_labels.push_back("p" + std::to_string(p));
  spec.theta0 = static_cast<std::size_t>(sample_uniform(rng) * static_cast<double>(n_theta));
  spec.prior1.assign(n_theta, std::vector<double>(n_psi));
  spec.likelihood.assign(n_theta, std::vector<double>(n_psi));
  spec.prior0.assign(n_psi, 0.0);
  double total = 0.0;
  for (std::size_t t = 0; t < n_theta; ++t) {
    for (std::size_t p = 0; p < n_psi; ++p) {
      spec.prior1[t][p] = 0.05 + sample_uniform(rng);
      total += spec.prior1[t][p];
      spec.likelihood[t][p] = std::exp(3.0 * (sample_uniform(rng) - 0.5));
    }
  }
  for (auto& row : spec.prior1) {
    for (double& v : row) v /= total;
  }
  double total0 = 0.0;
  for (double& v : spec.prior0) total0 += (v = 0.05 + sample_uniform(rng));
  for (double& v : spec.prior0) v /= total0;
  return spec;
}

GaussianNestedSpec reference_gaussian_spec(double rho) {
  GaussianNestedSpec spec;
  spec.sigma2 = 1.0;
  spec.tau_theta2 = 1.0;
  spec.tau_psi2 = 1.0;
  spec.rho = rho;
  spec.theta0 = 0.0;
  spec.data = {0.3, 1.1, -0.4, 0.8, 0.5};
  return spec;
}

std::vector<CheckResult> discrete_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;

  const DiscreteNestedSpec two = two_by_two_spec();
  const double brute = oracle::discrete_brute_force_bayes_factor(two);
  out.push_back(at_most("discrete: 2x2 enumeration oracle equals hand value 1.2",
                        std::abs(brute - 1.2), 1e-12, "oracle B01 = " + fmt(brute)));
  out.push_back(at_most("discrete: exact B01 matches enumeration oracle",
                        std::abs(discrete_exact_bayes_factor(two) - brute), 1e-12));
  const DiscreteTerms two_terms = discrete_exact_terms(two);
  out.push_back(at_most("discrete: 2x2 left x right = 1.2",
                        std::abs(two_terms.left * two_terms.right - 1.2), 1e-12));

  Rng rng = make_rng(seed);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const auto nt = 1 + static_cast<std::size_t>(sample_uniform(rng) * 5.0);
    const auto np = 1 + static_cast<std::size_t>(sample_uniform(rng) * 5.0);
    const DiscreteNestedSpec spec = random_discrete_spec(rng, nt, np);
    const DiscreteTerms terms = discrete_exact_terms(spec);
    const double b01 = oracle::discrete_brute_force_bayes_factor(spec);
    worst = std::max(worst, std::abs(terms.left * terms.right - b01) / b01);
  }
  out.push_back(at_most("discrete: factorization identity on 100 random tables", worst, 1e-12));

  const DiscreteNestedSpec three = three_by_three_spec();
  const DiscreteTerms exact = discrete_exact_terms(three);
  const auto problem = discrete_problem_adapter(three);
  const TermEstimate left = estimate_left_term(problem, 100000, derive_seed(seed, 1));
  const TermEstimate right = estimate_right_term(problem, 100000, derive_seed(seed, 2));
  out.push_back(at_most("discrete: left term within 3 SE of exact (N=1e5)",
                        std::abs(left.mean - exact.left) / left.std_error, 3.0,
                        "estimate " + fmt(left.mean) + " exact " + fmt(exact.left)));
  out.push_back(at_most("discrete: right term within 3 SE of exact (N=1e5)",
                        std::abs(right.mean - exact.right) / right.std_error, 3.0,
                        "estimate " + fmt(right.mean) + " exact " + fmt(exact.right)));
  return out;
}

std::vector<CheckResult> gaussian_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  for (double rho : {0.0, 0.5}) {
    const GaussianNestedSpec spec = reference_gaussian_spec(rho);
    const std::string tag = "gaussian rho=" + fmt(rho) + ": ";
    const double closed = gaussian_exact_bayes_factor(spec);
    const double quad = oracle::gaussian_quadrature_bayes_factor(spec);
    out.push_back(at_most(tag + "closed form matches 2-D quadrature", std::abs(closed - quad) / quad,
                          1e-8, "closed " + fmt(closed) + " quadrature " + fmt(quad)));

    const auto problem = gaussian_problem_adapter(spec);
    const BayesFactorEstimate est =
        estimate_bayes_factor(problem, 100000, derive_seed(seed, 10 + static_cast<int>(rho * 10)),
                              derive_seed(seed, 20 + static_cast<int>(rho * 10)));
    out.push_back(at_most(tag + "product estimate within 2% (N=1e5)",
                          std::abs(est.b01 - closed) / closed, 0.02,
                          "estimate " + fmt(est.b01) + " exact " + fmt(closed)));
    if (rho == 0.0) {
      out.push_back(at_most(tag + "SDDR equals Bayes factor",
                            std::abs(gaussian_savage_dickey_ratio(spec) - closed) / closed, 1e-10));
    }
  }
  return out;
}

std::vector<CheckResult> polya_suite() {
  std::vector<CheckResult> out;
  const std::vector<std::pair<double, double>> pairs = {
      {0.5, 1.0}, {0.5, 6.0}, {2.0, 0.3}, {1.0, 1.0}, {0.01, 50.0}};
  double worst = 0.0;
  double worst_sum = 0.0;
  std::size_t partitions = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto all = oracle::enumerate_partitions(n);
    for (auto [alpha0, alpha] : pairs) {
      double sum0 = 0.0;
      for (const auto& rgs : all) {
        const double p0 = oracle::urn_sequence_probability(rgs, alpha0);
        const double p1 = oracle::urn_sequence_probability(rgs, alpha);
        sum0 += p0;
        const double got = std::exp(polya_urn_log_ratio(oracle::count_blocks(rgs), n, alpha0, alpha));
        worst = std::max(worst, std::abs(got - p0 / p1) / (p0 / p1));
        ++partitions;
      }
      worst_sum = std::max(worst_sum, std::abs(sum0 - 1.0));
    }
  }
  out.push_back(at_most("polya: enumeration ratio for all partitions, n <= 8", worst, 1e-10,
                        std::to_string(partitions) + " partition/parameter cases"));
  out.push_back(at_most("polya: enumerated urn probabilities sum to 1", worst_sum, 1e-12));
  out.push_back(at_most("polya: Bell(8) = 4140 partitions enumerated",
                        std::abs(static_cast<double>(oracle::enumerate_partitions(8).size()) - 4140.0),
                        0.0));
  return out;
}

namespace {

// Small fixed data set and partition for the conditional checks.
std::vector<double> conditional_data() {
  return {1.8, 2.1, 1.9, 4.4, 4.6, 4.3, 4.7, 3.2, 2.0, 4.5,
          1.7, 4.1, 4.9, 2.2, 3.9, 1.6, 4.2, 2.4, 4.0, 3.5};
}

ChainState conditional_state(const std::vector<double>& data, bool auxiliary) {
  std::vector<double> psi;
  for (double x : data) psi.push_back(x < 3.0 ? 2.0 : (x < 3.7 ? 3.4 : 4.4));
  ChainState state;
  state.clusters = ClusterState::from_values(psi);
  state.alpha = 1.5;
  if (auxiliary) state.alpha_prime = 0.8;
  return state;
}

double direct_rss(const std::vector<double>& data, const std::vector<double>& psi) {
  double s = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) s += (data[i] - psi[i]) * (data[i] - psi[i]);
  return s;
}

double log_alpha_prime_target(double a, double shape, double rate, double d, double n) {
  return log_gamma_kernel(a, shape, rate) + d * std::log(a) + std::lgamma(a) - std::lgamma(a + n);
}

}  // namespace

CheckResult check_alpha_kernel(std::uint64_t seed, std::size_t draws) {
  const DpHyperParams hyper;
  const std::vector<double> data = conditional_data();
  ChainState state = conditional_state(data, true);
  const double s = direct_rss(data, state.clusters.expand());
  const double shape = hyper.nu1 + 0.5 * static_cast<double>(data.size());
  const double rate = hyper.nu2 + s / (2.0 * hyper.k);
  const double sd = std::sqrt(shape) / rate;
  const oracle::GridDensity grid([&](double a) { return log_gamma_kernel(a, shape, rate); }, 0.0,
                                 shape / rate + 20.0 * sd, 100000);

  Rng rng = make_rng(seed);
  std::vector<double> samples;
  samples.reserve(draws);
  for (std::size_t t = 0; t < draws; ++t) {
    update_alpha_kernel(state, data, hyper, rng);
    samples.push_back(state.alpha);
  }
  const double tv = grid.tv_distance(samples, 20);
  const double z_mean = std::abs(oracle::sample_mean(samples) - grid.mean()) /
                        std::sqrt(grid.variance() / static_cast<double>(draws));
  CheckResult r = at_most("conditionals: alpha kernel update vs grid (TV)", tv, 0.01,
                          "mean z = " + fmt(z_mean));
  r.passed = r.passed && z_mean <= 3.0;
  return r;
}

CheckResult check_alpha_prime_chain(std::uint64_t seed, std::size_t draws) {
  const DpHyperParams hyper;
  const std::vector<double> data = conditional_data();
  ChainState state = conditional_state(data, true);
  const double d = static_cast<double>(state.clusters.num_clusters());
  const double n = static_cast<double>(data.size());
  const oracle::GridDensity grid(
      [&](double a) { return log_alpha_prime_target(a, hyper.nu1, hyper.nu2, d, n); }, 0.0, 50.0,
      100000);

  Rng rng = make_rng(seed);
  for (int t = 0; t < 100; ++t) update_alpha_prime(state, hyper, rng);
  std::vector<double> samples;
  samples.reserve(draws);
  for (std::size_t t = 0; t < draws; ++t) {
    update_alpha_prime(state, hyper, rng);
    samples.push_back(*state.alpha_prime);
  }
  return at_most("conditionals: alpha' chain vs grid (TV)", grid.tv_distance(samples, 20), 0.01);
}

CheckResult check_alpha_prime_invariance(std::uint64_t seed, std::size_t draws) {
  const DpHyperParams hyper;
  const std::vector<double> data = conditional_data();
  const ChainState base = conditional_state(data, true);
  const double d = static_cast<double>(base.clusters.num_clusters());
  const double n = static_cast<double>(data.size());
  const oracle::GridDensity grid(
      [&](double a) { return log_alpha_prime_target(a, hyper.nu1, hyper.nu2, d, n); }, 0.0, 50.0,
      100000);

  Rng rng = make_rng(seed);
  ChainState state = base;
  std::vector<double> samples;
  samples.reserve(draws);
  for (std::size_t t = 0; t < draws; ++t) {
    state.alpha_prime = grid.quantile(sample_uniform(rng));
    update_alpha_prime(state, hyper, rng);
    samples.push_back(*state.alpha_prime);
  }
  return at_most("conditionals: alpha' one-step invariance (TV)", grid.tv_distance(samples, 20),
                 0.01);
}

namespace {

CheckResult alpha_full_against(const std::string& name, const DpHyperParams& hyper,
                               const std::function<double(double)>& log_target, double hi,
                               std::uint64_t seed, std::size_t draws, std::size_t thinning) {
  const std::vector<double> data = {1.9, 2.3, 4.4, 4.1, 3.0};
  ChainState state;
  state.clusters = ClusterState::from_values(std::vector<double>{2.0, 2.0, 4.3, 4.3, 3.1});
  state.alpha = 1.0;
  const oracle::GridDensity grid(log_target, 0.0, hi, 100000);

  Rng rng = make_rng(seed);
  AlphaMove move;
  move.log_step = 0.8;
  for (int t = 0; t < 1000; ++t) update_alpha_full(state, data, hyper, move, rng);
  std::vector<double> samples;
  samples.reserve(draws);
  for (std::size_t t = 0; t < draws; ++t) {
    for (std::size_t j = 0; j < thinning; ++j) update_alpha_full(state, data, hyper, move, rng);
    samples.push_back(state.alpha);
  }
  return at_most(name, grid.tv_distance(samples, 20), 0.01,
                 "acceptance " + fmt(move.acceptance_rate()));
}

}  // namespace

CheckResult check_alpha_full(std::uint64_t seed, std::size_t draws, std::size_t thinning) {
  const DpHyperParams hyper;
  const std::vector<double> data = {1.9, 2.3, 4.4, 4.1, 3.0};
  const std::vector<double> psi = {2.0, 2.0, 4.3, 4.3, 3.1};
  const double s = direct_rss(data, psi);
  const double n = 5.0;
  const double d = 3.0;
  // Gamma prior x kernel likelihood x partition law.
  auto target = [&](double a) {
    return log_gamma_kernel(a, hyper.nu1, hyper.nu2) + 0.5 * n * std::log(a) -
           a * s / (2.0 * hyper.k) + d * std::log(a) + std::lgamma(a) - std::lgamma(a + n);
  };
  return alpha_full_against("conditionals: full-model alpha MH vs grid (TV)", hyper, target, 50.0,
                            seed, draws, thinning);
}

CheckResult check_alpha_full_large_k(std::uint64_t seed, std::size_t draws, std::size_t thinning) {
  DpHyperParams hyper;
  hyper.k = 1e12;
  // With the exponential kernel factor gone, the target is the alpha'
  // conditional with the prior shape raised by n/2.
  const double n = 5.0;
  const double d = 3.0;
  auto target = [&](double a) {
    return log_alpha_prime_target(a, hyper.nu1 + 0.5 * n, hyper.nu2, d, n);
  };
  return alpha_full_against("conditionals: full-model alpha, k -> inf vs alpha' grid (TV)", hyper,
                            target, 50.0, seed, draws, thinning);
}

std::vector<CheckResult> check_mu_frequencies(std::uint64_t seed, std::size_t draws) {
  DpHyperParams hyper;  // m = 3, sigma2 = 4
  const std::vector<double> data = {1.2, 0.4, 2.6};
  ChainState base;
  base.clusters = ClusterState::from_values(std::vector<double>{0.2, 0.2, 2.8});
  base.alpha = 1.0;
  const double concentration = 1.0;
  const double v = hyper.k / base.alpha;

  // Detaching observation 0 leaves clusters {0.2: 1 member}, {2.8: 1 member}.
  auto npdf = [](double x, double mean, double var) {
    return std::exp(-0.5 * (x - mean) * (x - mean) / var) / std::sqrt(2.0 * std::numbers::pi * var);
  };
  std::array<double, 3> w = {1.0 * npdf(1.2, 0.2, v), 1.0 * npdf(1.2, 2.8, v),
                             concentration * npdf(1.2, hyper.m, hyper.sigma2 + v)};
  const double total = w[0] + w[1] + w[2];
  for (double& x : w) x /= total;

  Rng rng = make_rng(seed);
  std::array<double, 3> hits = {0, 0, 0};
  double new_sum = 0.0;
  for (std::size_t t = 0; t < draws; ++t) {
    ChainState state = base;
    sample_mu_conditional(0, state, concentration, data, hyper, rng);
    const double mu = state.clusters.mu(0);
    if (mu == 0.2) {
      hits[0] += 1;
    } else if (mu == 2.8) {
      hits[1] += 1;
    } else {
      hits[2] += 1;
      new_sum += mu;
    }
  }
  std::vector<CheckResult> out;
  const char* labels[3] = {"join cluster at 0.2", "join cluster at 2.8", "open new cluster"};
  const double nd = static_cast<double>(draws);
  for (int j = 0; j < 3; ++j) {
    const double se = std::sqrt(w[j] * (1.0 - w[j]) / nd);
    out.push_back(at_most(std::string("conditionals: mu update frequency, ") + labels[j],
                          std::abs(hits[j] / nd - w[j]) / se, 3.0,
                          "freq " + fmt(hits[j] / nd) + " exact " + fmt(w[j])));
  }
  const double post_var = 1.0 / (1.0 / hyper.sigma2 + 1.0 / v);
  const double post_mean = post_var * (hyper.m / hyper.sigma2 + 1.2 / v);
  const double z = std::abs(new_sum / hits[2] - post_mean) / std::sqrt(post_var / hits[2]);
  out.push_back(at_most("conditionals: new-cluster value mean matches conjugate posterior", z, 3.0));
  return out;
}

std::vector<CheckResult> conditionals_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  out.push_back(check_alpha_kernel(derive_seed(seed, 1)));
  out.push_back(check_alpha_prime_chain(derive_seed(seed, 2)));
  out.push_back(check_alpha_prime_invariance(derive_seed(seed, 3)));
  out.push_back(check_alpha_full(derive_seed(seed, 4)));
  out.push_back(check_alpha_full_large_k(derive_seed(seed, 5)));
  for (auto& r : check_mu_frequencies(derive_seed(seed, 6))) out.push_back(std::move(r));
  return out;
}

namespace {

struct ForwardDraw {
  double alpha = 0.0;
  double alpha_prime = 0.0;
  ChainState state;
  std::vector<double> data;
};

// Forward simulation of the joint prior and data, independent of the sampler.
ForwardDraw forward_draw(DpModel model, std::size_t n, const DpHyperParams& hyper, Rng& rng) {
  ForwardDraw out;
  out.alpha = sample_gamma(rng, hyper.nu1, hyper.nu2);
  const double concentration =
      model == DpModel::auxiliary ? (out.alpha_prime = sample_gamma(rng, hyper.nu1, hyper.nu2))
                                  : out.alpha;
  std::vector<double> counts;
  std::vector<double> values;
  std::vector<double> psi;
  for (std::size_t i = 0; i < n; ++i) {
    double u = sample_uniform(rng) * (concentration + static_cast<double>(i));
    std::size_t pick = counts.size();
    for (std::size_t j = 0; j < counts.size(); ++j) {
      if (u < counts[j]) {
        pick = j;
        break;
      }
      u -= counts[j];
    }
    if (pick == counts.size()) {
      counts.push_back(0.0);
      values.push_back(sample_normal(rng, hyper.m, std::sqrt(hyper.sigma2)));
    }
    counts[pick] += 1.0;
    psi.push_back(values[pick]);
  }
  const double kernel_sd = std::sqrt(hyper.k / out.alpha);
  for (double mu : psi) out.data.push_back(sample_normal(rng, mu, kernel_sd));
  out.state.clusters = ClusterState::from_values(psi);
  out.state.alpha = out.alpha;
  if (model == DpModel::auxiliary) out.state.alpha_prime = out.alpha_prime;
  return out;
}

}  // namespace

std::vector<GewekeMoment> geweke_moments(DpModel model, std::size_t n, std::size_t sweeps,
                                         std::uint64_t seed) {
  const DpHyperParams hyper;
  Rng rng = make_rng(seed);

  std::vector<double> f_alpha, f_alpha_prime, f_d;
  for (std::size_t t = 0; t < sweeps; ++t) {
    const ForwardDraw fd = forward_draw(model, n, hyper, rng);
    f_alpha.push_back(fd.alpha);
    f_alpha_prime.push_back(fd.alpha_prime);
    f_d.push_back(static_cast<double>(fd.state.clusters.num_clusters()));
  }

  ForwardDraw start = forward_draw(model, n, hyper, rng);
  ChainState state = start.state;
  std::vector<double> data = start.data;
  AlphaMove move;
  move.log_step = 0.7;
  std::vector<double> c_alpha, c_alpha_prime, c_d;
  for (std::size_t t = 0; t < sweeps; ++t) {
    if (model == DpModel::auxiliary) {
      gibbs_sweep_auxiliary(state, data, hyper, rng);
    } else {
      gibbs_sweep_full(state, data, hyper, move, rng);
    }
    const double kernel_sd = std::sqrt(hyper.k / state.alpha);
    for (std::size_t i = 0; i < n; ++i) data[i] = sample_normal(rng, state.clusters.mu(i), kernel_sd);
    c_alpha.push_back(state.alpha);
    c_alpha_prime.push_back(state.alpha_prime.value_or(0.0));
    c_d.push_back(static_cast<double>(state.clusters.num_clusters()));
  }

  auto moment = [&](std::string name, const std::vector<double>& f, const std::vector<double>& c) {
    GewekeMoment m;
    m.quantity = std::move(name);
    m.forward_mean = oracle::sample_mean(f);
    m.chain_mean = oracle::sample_mean(c);
    const double se_f = std::sqrt(oracle::sample_variance(f) / static_cast<double>(f.size()));
    const double se_c = oracle::batch_means_std_error(c, 50);
    m.std_error = std::sqrt(se_f * se_f + se_c * se_c);
    m.z = (m.chain_mean - m.forward_mean) / m.std_error;
    return m;
  };
  auto squares = [](std::vector<double> xs) {
    for (double& x : xs) x *= x;
    return xs;
  };
  std::vector<GewekeMoment> out;
  out.push_back(moment("alpha", f_alpha, c_alpha));
  out.push_back(moment("alpha^2", squares(f_alpha), squares(c_alpha)));
  if (model == DpModel::auxiliary) {
    out.push_back(moment("alpha'", f_alpha_prime, c_alpha_prime));
    out.push_back(moment("alpha'^2", squares(f_alpha_prime), squares(c_alpha_prime)));
  }
  out.push_back(moment("d", f_d, c_d));
  out.push_back(moment("d^2", squares(f_d), squares(c_d)));
  return out;
}

std::vector<CheckResult> geweke_suite(DpModel model, std::size_t n, std::size_t sweeps,
                                      std::uint64_t seed) {
  const std::string tag = model == DpModel::auxiliary ? "auxiliary" : "full";
  std::vector<CheckResult> out;
  for (const auto& m : geweke_moments(model, n, sweeps, seed)) {
    out.push_back(at_most("geweke " + tag + ": mean of " + m.quantity, std::abs(m.z), 3.0,
                          "forward " + fmt(m.forward_mean) + " chain " + fmt(m.chain_mean) +
                              " se " + fmt(m.std_error)));
  }
  return out;
}

namespace {

template <class Draw>
double convergence_slope(const NestedProblem<Draw>& problem, double exact, std::uint64_t seed,
                         std::size_t reps) {
  std::vector<double> log_n, log_err;
  std::uint64_t stream = 0;
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    double ss = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      const auto est = estimate_bayes_factor(problem, n, derive_seed(seed, stream),
                                             derive_seed(seed, stream + 1));
      stream += 2;
      ss += (est.b01 - exact) * (est.b01 - exact);
    }
    log_n.push_back(std::log(static_cast<double>(n)));
    log_err.push_back(0.5 * std::log(ss / static_cast<double>(reps)));
  }
  return oracle::fitted_slope(log_n, log_err);
}

}  // namespace

double discrete_convergence_slope(std::uint64_t seed, std::size_t reps) {
  const DiscreteNestedSpec spec = three_by_three_spec();
  return convergence_slope(discrete_problem_adapter(spec),
                           oracle::discrete_brute_force_bayes_factor(spec), seed, reps);
}

double gaussian_convergence_slope(std::uint64_t seed, std::size_t reps) {
  const GaussianNestedSpec spec = reference_gaussian_spec(0.5);
  return convergence_slope(gaussian_problem_adapter(spec),
                           oracle::gaussian_quadrature_bayes_factor(spec), seed, reps);
}

}  // namespace gsdr::checks
