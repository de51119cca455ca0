#include "gsdr/dp_mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gsdr/densities.hpp"

namespace gsdr {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be positive and finite");
  }
}

}  // namespace

void DpHyperParams::validate() const {
  if (!std::isfinite(m)) throw std::invalid_argument("m must be finite");
  require_positive(sigma2, "sigma2");
  require_positive(nu1, "nu1");
  require_positive(nu2, "nu2");
  require_positive(k, "k");
  require_positive(alpha0, "alpha0");
}

double residual_sum_of_squares(const ClusterState& clusters, std::span<const double> data) {
  if (clusters.size() != data.size()) throw std::invalid_argument("state and data sizes differ");
  double s = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double r = data[i] - clusters.mu(i);
    s += r * r;
  }
  return s;
}

void sample_mu_conditional(std::size_t i, ChainState& state, double concentration,
                           std::span<const double> data, const DpHyperParams& hyper, Rng& rng) {
  ClusterState& clusters = state.clusters;
  if (i >= clusters.size()) throw std::out_of_range("observation index out of range");
  const double kernel_var = hyper.k / state.alpha;
  const double x = data[i];

  clusters.detach(i);
  const std::size_t d = clusters.num_clusters();

  // Slots [0, d) are existing clusters, slot d opens a new one.
  thread_local std::vector<double> log_w;
  log_w.resize(d + 1);
  for (std::size_t j = 0; j < d; ++j) {
    log_w[j] = std::log(static_cast<double>(clusters.count(j))) +
               log_normal_pdf(x, clusters.value(j), kernel_var);
  }
  log_w[d] = std::log(concentration) + log_normal_pdf(x, hyper.m, hyper.sigma2 + kernel_var);

  const double top = *std::max_element(log_w.begin(), log_w.end());
  if (!std::isfinite(top)) {
    throw SamplerError("non-finite urn weight at observation " + std::to_string(i));
  }
  double total = 0.0;
  for (double& w : log_w) {
    w = std::exp(w - top);
    if (!std::isfinite(w)) {
      throw SamplerError("non-finite urn weight at observation " + std::to_string(i));
    }
    total += w;
  }

  double u = sample_uniform(rng) * total;
  std::size_t pick = d;
  for (std::size_t j = 0; j < d; ++j) {
    if (u < log_w[j]) {
      pick = j;
      break;
    }
    u -= log_w[j];
  }

  if (pick < d) {
    clusters.attach(i, pick);
    return;
  }
  const double post_var = 1.0 / (1.0 / hyper.sigma2 + 1.0 / kernel_var);
  const double post_mean = post_var * (hyper.m / hyper.sigma2 + x / kernel_var);
  clusters.attach_new(i, sample_normal(rng, post_mean, std::sqrt(post_var)));
}

void resample_cluster_values(ChainState& state, std::span<const double> data,
                             const DpHyperParams& hyper, Rng& rng) {
  ClusterState& clusters = state.clusters;
  const std::size_t d = clusters.num_clusters();
  std::vector<double> sums(d, 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) sums[clusters.cluster_of(i)] += data[i];

  const double kernel_var = hyper.k / state.alpha;
  for (std::size_t j = 0; j < d; ++j) {
    const double n_j = static_cast<double>(clusters.count(j));
    const double post_var = 1.0 / (1.0 / hyper.sigma2 + n_j / kernel_var);
    const double post_mean = post_var * (hyper.m / hyper.sigma2 + sums[j] / kernel_var);
    clusters.set_value(j, sample_normal(rng, post_mean, std::sqrt(post_var)));
  }
}

void update_alpha_kernel(ChainState& state, std::span<const double> data,
                         const DpHyperParams& hyper, Rng& rng) {
  const double s = residual_sum_of_squares(state.clusters, data);
  if (!std::isfinite(s)) throw SamplerError("non-finite residual sum of squares");
  const double shape = hyper.prior_shape() + 0.5 * static_cast<double>(data.size());
  const double rate = hyper.prior_rate() + s / (2.0 * hyper.k);
  state.alpha = sample_gamma(rng, shape, rate);
}

void update_alpha_prime(ChainState& state, const DpHyperParams& hyper, Rng& rng) {
  if (!state.alpha_prime) throw std::logic_error("alpha' is only defined in the auxiliary model");
  const std::size_t d = state.clusters.num_clusters();
  const std::size_t n = state.clusters.size();
  if (d < 1) throw SamplerError("alpha' update needs at least one cluster");

  const double a = hyper.prior_shape();
  const double nd = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  const double eta = sample_beta(rng, *state.alpha_prime + 1.0, nd);
  const double rate = hyper.prior_rate() - std::log(eta);
  const double odds = (a + dd - 1.0) / (nd * rate);
  const double shape = sample_uniform(rng) * (1.0 + odds) < odds ? a + dd : a + dd - 1.0;
  state.alpha_prime = sample_gamma(rng, shape, rate);
}

double log_alpha_full_conditional(double alpha, std::size_t n, std::size_t d, double s,
                                  const DpHyperParams& hyper) {
  if (!(alpha > 0.0)) return -std::numeric_limits<double>::infinity();
  const double nd = static_cast<double>(n);
  const double shape = hyper.prior_shape() + 0.5 * nd + static_cast<double>(d);
  const double rate = hyper.prior_rate() + s / (2.0 * hyper.k);
  return (shape - 1.0) * std::log(alpha) - rate * alpha + log_gamma(alpha) - log_gamma(alpha + nd);
}

bool update_alpha_full(ChainState& state, std::span<const double> data,
                       const DpHyperParams& hyper, AlphaMove& move, Rng& rng) {
  const std::size_t n = data.size();
  const std::size_t d = state.clusters.num_clusters();
  const double s = residual_sum_of_squares(state.clusters, data);

  // Target in u = log alpha carries the Jacobian alpha.
  const double u = std::log(state.alpha);
  const double u_new = u + move.log_step * sample_normal(rng, 0.0, 1.0);
  const double current = log_alpha_full_conditional(state.alpha, n, d, s, hyper) + u;
  const double proposed = log_alpha_full_conditional(std::exp(u_new), n, d, s, hyper) + u_new;
  ++move.proposed;
  if (!std::isfinite(proposed)) {
    ++move.nonfinite;
    return false;
  }
  if (std::log(sample_uniform(rng)) < proposed - current) {
    state.alpha = std::exp(u_new);
    ++move.accepted;
    return true;
  }
  return false;
}

void gibbs_sweep_auxiliary(ChainState& state, std::span<const double> data,
                           const DpHyperParams& hyper, Rng& rng) {
  if (!state.alpha_prime) throw std::logic_error("auxiliary sweep needs alpha'");
  for (std::size_t i = 0; i < data.size(); ++i) {
    sample_mu_conditional(i, state, *state.alpha_prime, data, hyper, rng);
  }
  resample_cluster_values(state, data, hyper, rng);
  update_alpha_kernel(state, data, hyper, rng);
  update_alpha_prime(state, hyper, rng);
}

void gibbs_sweep_full(ChainState& state, std::span<const double> data, const DpHyperParams& hyper,
                      AlphaMove& move, Rng& rng) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    sample_mu_conditional(i, state, state.alpha, data, hyper, rng);
  }
  resample_cluster_values(state, data, hyper, rng);
  update_alpha_full(state, data, hyper, move, rng);
}

double polya_urn_log_ratio(std::size_t d, std::size_t n, double alpha0, double alpha) {
  if (n < 1 || d < 1 || d > n) throw std::domain_error("cluster count must satisfy 1 <= d <= n");
  if (!(alpha0 > 0.0) || !(alpha > 0.0) || !std::isfinite(alpha0) || !std::isfinite(alpha)) {
    throw std::domain_error("concentrations must be positive and finite");
  }
  // (alpha0/alpha)^d Gamma(alpha0) Gamma(alpha+n) / (Gamma(alpha) Gamma(alpha0+n))
  //   = (alpha0/alpha)^(d-1) prod_{j=1}^{n-1} (alpha+j)/(alpha0+j).
  // Written this way the ratio is exactly 0 for alpha == alpha0 and for n == 1.
  double out = static_cast<double>(d - 1) * (std::log(alpha0) - std::log(alpha));
  const double diff = alpha - alpha0;
  for (std::size_t j = 1; j < n; ++j) out += std::log1p(diff / (alpha0 + static_cast<double>(j)));
  return out;
}

double left_term_value_dp(const ChainState& state, std::span<const double> data,
                          const DpHyperParams& hyper) {
  if (!(hyper.alpha0 > 0.0)) throw std::domain_error("alpha0 must be positive");
  const double s = residual_sum_of_squares(state.clusters, data);
  const double shape = hyper.prior_shape();
  const double rate = hyper.prior_rate();
  const double post_shape = shape + 0.5 * static_cast<double>(data.size());
  const double post_rate = rate + s / (2.0 * hyper.k);
  return std::exp(log_gamma_pdf(hyper.alpha0, post_shape, post_rate) -
                  log_gamma_pdf(hyper.alpha0, shape, rate));
}

double right_term_value_dp(const ChainState& state, const DpHyperParams& hyper) {
  return std::exp(polya_urn_log_ratio(state.clusters.num_clusters(), state.clusters.size(),
                                      hyper.alpha0, state.alpha));
}

ChainState initial_chain_state(DpModel model, std::span<const double> data,
                               const DpHyperParams& hyper) {
  const double mean =
      data.empty() ? hyper.m
                   : std::accumulate(data.begin(), data.end(), 0.0) / static_cast<double>(data.size());
  ChainState state;
  state.clusters = ClusterState::single_cluster(data.size(), mean);
  state.alpha = hyper.prior_mean();
  if (model == DpModel::auxiliary) state.alpha_prime = hyper.prior_mean();
  return state;
}

DpGibbsSampler::DpGibbsSampler(DpModel model, std::shared_ptr<const std::vector<double>> data,
                               DpHyperParams hyper, std::uint64_t seed)
    : model_(model),
      data_(std::move(data)),
      hyper_(hyper),
      rng_(make_rng(seed)),
      state_(initial_chain_state(model, *data_, hyper_)) {
  hyper_.validate();
}

void DpGibbsSampler::sweep() {
  if (model_ == DpModel::auxiliary) {
    gibbs_sweep_auxiliary(state_, *data_, hyper_, rng_);
  } else {
    gibbs_sweep_full(state_, *data_, hyper_, move_, rng_);
  }
  ++retained_sweeps_;
  cluster_total_ += static_cast<double>(state_.clusters.num_clusters());
}

void DpGibbsSampler::burn_in(std::size_t sweeps, bool tune) {
  constexpr std::size_t kWindow = 25;
  constexpr double kTarget = 0.44;
  std::size_t window_start_proposed = move_.proposed;
  std::size_t window_start_accepted = move_.accepted;
  for (std::size_t t = 1; t <= sweeps; ++t) {
    sweep();
    if (!tune || model_ != DpModel::full || t % kWindow != 0) continue;
    const auto proposed = static_cast<double>(move_.proposed - window_start_proposed);
    const auto accepted = static_cast<double>(move_.accepted - window_start_accepted);
    const double rate = proposed > 0 ? accepted / proposed : 0.0;
    const double gain = 2.0 / std::sqrt(static_cast<double>(t / kWindow));
    move_.log_step = std::clamp(move_.log_step * std::exp(gain * (rate - kTarget)), 1e-4, 10.0);
    window_start_proposed = move_.proposed;
    window_start_accepted = move_.accepted;
  }
  move_.proposed = move_.accepted = move_.nonfinite = 0;
  retained_sweeps_ = 0;
  cluster_total_ = 0.0;
}

double DpGibbsSampler::mean_clusters() const {
  return retained_sweeps_ == 0 ? 0.0 : cluster_total_ / static_cast<double>(retained_sweeps_);
}

namespace {

SamplerFactory<ChainState> chain_factory(DpModel model,
                                         std::shared_ptr<const std::vector<double>> data,
                                         const DpHyperParams& hyper, const ChainSchedule& schedule,
                                         std::shared_ptr<DpProblemDiagnostics> diagnostics) {
  if (schedule.thinning == 0) throw std::invalid_argument("thinning must be at least 1");
  return [=](std::uint64_t seed) -> DrawStream<ChainState> {
    auto sampler = std::make_shared<DpGibbsSampler>(model, data, hyper, seed);
    sampler->burn_in(schedule.burn_in, schedule.tune_step);
    return [sampler, schedule, diagnostics, model]() -> ChainState {
      for (std::size_t t = 0; t < schedule.thinning; ++t) sampler->sweep();
      if (diagnostics) {
        ChainDiagnostics& out =
            model == DpModel::auxiliary ? diagnostics->auxiliary : diagnostics->full;
        out.retained_sweeps = sampler->retained_sweeps();
        out.mean_clusters = sampler->mean_clusters();
        out.acceptance_rate = sampler->alpha_move().acceptance_rate();
        out.log_step = sampler->alpha_move().log_step;
      }
      return sampler->state();
    };
  };
}

}  // namespace

NestedProblem<ChainState> make_dp_problem(std::shared_ptr<const std::vector<double>> data,
                                          const DpHyperParams& hyper,
                                          const ChainSchedule& schedule,
                                          std::shared_ptr<DpProblemDiagnostics> diagnostics) {
  hyper.validate();
  if (!data || data->empty()) throw std::invalid_argument("DP problem needs at least one datum");
  NestedProblem<ChainState> problem;
  problem.aux_posterior_sampler =
      chain_factory(DpModel::auxiliary, data, hyper, schedule, diagnostics);
  problem.full_posterior_sampler = chain_factory(DpModel::full, data, hyper, schedule, diagnostics);
  problem.left_evaluator = [data, hyper](const ChainState& s) {
    return left_term_value_dp(s, *data, hyper);
  };
  problem.right_evaluator = [hyper](const ChainState& s) { return right_term_value_dp(s, hyper); };
  return problem;
}

}  // namespace gsdr
