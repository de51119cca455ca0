// Dirichlet-process random effects model with a shared kernel precision.
//
// Complex model:
//   x_i ~ N(mu_i, k / alpha),  {mu_i} ~ P,  P ~ DP(alpha, N(m, sigma2)),
//   alpha ~ Gamma(nu1, nu2).
// Simple model: alpha fixed at alpha0.
// Separable auxiliary: the DP concentration is decoupled into alpha' with its
// own Gamma(nu1, nu2) prior, so alpha only acts as the kernel precision.

#ifndef GSDR_DP_MIXTURE_HPP
#define GSDR_DP_MIXTURE_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gsdr/cluster_state.hpp"
#include "gsdr/random.hpp"
#include "gsdr/sdr.hpp"

namespace gsdr {

/// How the second parameter of Gamma(nu1, nu2) is read.
enum class GammaConvention { shape_rate, shape_scale };

struct DpHyperParams {
  double m = 3.0;
  double sigma2 = 4.0;
  double nu1 = 5.0;
  double nu2 = 5.0;
  double k = 1.0;
  double alpha0 = 0.5;
  GammaConvention gamma_convention = GammaConvention::shape_rate;

  double prior_shape() const { return nu1; }
  double prior_rate() const {
    return gamma_convention == GammaConvention::shape_rate ? nu2 : 1.0 / nu2;
  }
  double prior_mean() const { return prior_shape() / prior_rate(); }

  /// Throws std::invalid_argument on a non-positive or non-finite field.
  void validate() const;

  friend bool operator==(const DpHyperParams&, const DpHyperParams&) = default;
};

struct ChainState {
  ClusterState clusters;
  /// Kernel precision; also the DP concentration in the complex model.
  double alpha = 1.0;
  /// Decoupled concentration, present only in the auxiliary model.
  std::optional<double> alpha_prime;
};

class SamplerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// s = sum_i (x_i - mu_i)^2.
double residual_sum_of_squares(const ClusterState& clusters, std::span<const double> data);

/// Resamples mu_i from its Polya-urn full conditional. Existing cluster j has
/// weight n_{-i,j} N(x_i; mu*_j, k/alpha); a new cluster has weight
/// concentration * N(x_i; m, sigma2 + k/alpha) with its value drawn from the
/// conjugate normal posterior given x_i.
void sample_mu_conditional(std::size_t i, ChainState& state, double concentration,
                           std::span<const double> data, const DpHyperParams& hyper, Rng& rng);

/// Redraws every cluster value from N(m, sigma2) updated by its members.
/// Leaves the same posterior invariant as the per-observation moves.
void resample_cluster_values(ChainState& state, std::span<const double> data,
                             const DpHyperParams& hyper, Rng& rng);

/// alpha ~ Gamma(nu1 + n/2, rate + s/(2k)). Auxiliary model only.
void update_alpha_kernel(ChainState& state, std::span<const double> data,
                         const DpHyperParams& hyper, Rng& rng);

/// Escobar-West update of alpha' given d clusters: draws eta ~ Beta(alpha'+1, n)
/// and then alpha' from a two-component Gamma mixture.
void update_alpha_prime(ChainState& state, const DpHyperParams& hyper, Rng& rng);

/// Log of the unnormalized full-model conditional p(alpha | psi, x).
double log_alpha_full_conditional(double alpha, std::size_t n, std::size_t d, double s,
                                  const DpHyperParams& hyper);

/// Random-walk Metropolis state for alpha on the log scale.
struct AlphaMove {
  double log_step = 0.5;
  std::size_t proposed = 0;
  std::size_t accepted = 0;
  std::size_t nonfinite = 0;

  double acceptance_rate() const {
    return proposed == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(proposed);
  }
};

/// One Metropolis step on log alpha targeting log_alpha_full_conditional.
/// Non-finite proposals are rejected and counted. Returns true on acceptance.
bool update_alpha_full(ChainState& state, std::span<const double> data,
                       const DpHyperParams& hyper, AlphaMove& move, Rng& rng);

/// All mu coordinates with concentration alpha', cluster values, alpha, alpha'.
void gibbs_sweep_auxiliary(ChainState& state, std::span<const double> data,
                           const DpHyperParams& hyper, Rng& rng);

/// All mu coordinates with concentration alpha, cluster values, alpha.
void gibbs_sweep_full(ChainState& state, std::span<const double> data, const DpHyperParams& hyper,
                      AlphaMove& move, Rng& rng);

/// log dP0(psi) / dP(psi | alpha): ratio of the exchangeable partition laws at
/// concentrations alpha0 and alpha. Base-measure factors cancel, so the value
/// depends on psi only through the cluster count d.
double polya_urn_log_ratio(std::size_t d, std::size_t n, double alpha0, double alpha);

/// Gamma(alpha0; nu1 + n/2, rate + s/(2k)) / Gamma(alpha0; nu1, rate).
double left_term_value_dp(const ChainState& state, std::span<const double> data,
                          const DpHyperParams& hyper);

double right_term_value_dp(const ChainState& state, const DpHyperParams& hyper);

enum class DpModel { auxiliary, full };

struct ChainSchedule {
  std::size_t burn_in = 1000;
  std::size_t thinning = 1;
  /// Adapt the alpha step size during burn-in (complex model only).
  bool tune_step = true;
};

/// Every observation in one cluster at the sample mean; alpha (and alpha')
/// at the prior mean.
ChainState initial_chain_state(DpModel model, std::span<const double> data,
                               const DpHyperParams& hyper);

class DpGibbsSampler {
 public:
  DpGibbsSampler(DpModel model, std::shared_ptr<const std::vector<double>> data,
                 DpHyperParams hyper, std::uint64_t seed);

  void sweep();
  /// Runs `sweeps` sweeps; in the complex model the step size is adapted
  /// towards an acceptance rate in [0.2, 0.6] when `tune` is set. Counters
  /// are reset afterwards so diagnostics describe the frozen kernel.
  void burn_in(std::size_t sweeps, bool tune);

  DpModel model() const { return model_; }
  const ChainState& state() const { return state_; }
  ChainState& mutable_state() { return state_; }
  const std::vector<double>& data() const { return *data_; }
  const DpHyperParams& hyper() const { return hyper_; }
  const AlphaMove& alpha_move() const { return move_; }
  void set_log_step(double step) { move_.log_step = step; }

  std::size_t retained_sweeps() const { return retained_sweeps_; }
  double mean_clusters() const;

 private:
  DpModel model_;
  std::shared_ptr<const std::vector<double>> data_;
  DpHyperParams hyper_;
  Rng rng_;
  ChainState state_;
  AlphaMove move_;
  std::size_t retained_sweeps_ = 0;
  double cluster_total_ = 0.0;
};

struct ChainDiagnostics {
  std::size_t retained_sweeps = 0;
  double mean_clusters = 0.0;
  double acceptance_rate = 0.0;
  double log_step = 0.0;

  friend bool operator==(const ChainDiagnostics&, const ChainDiagnostics&) = default;
};

struct DpProblemDiagnostics {
  ChainDiagnostics auxiliary;
  ChainDiagnostics full;

  friend bool operator==(const DpProblemDiagnostics&, const DpProblemDiagnostics&) = default;
};

/// Builds the nested problem: the auxiliary chain feeds the left term and the
/// complex-model chain feeds the right term. If `diagnostics` is given it is
/// refreshed after every draw.
NestedProblem<ChainState> make_dp_problem(std::shared_ptr<const std::vector<double>> data,
                                          const DpHyperParams& hyper,
                                          const ChainSchedule& schedule,
                                          std::shared_ptr<DpProblemDiagnostics> diagnostics = {});

}  // namespace gsdr

#endif  // GSDR_DP_MIXTURE_HPP
