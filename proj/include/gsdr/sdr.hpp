// Generalized Savage-Dickey ratio estimator for nested models.
//
// The Bayes factor of a nested pair of models factorizes through a separable
// auxiliary prior (the product of the complex model's theta-marginal and the
// simple model's nuisance prior) as
//
//   B01 = [dP~(theta | x) / dP(theta)](theta0) * m~(x) / m(x).
//
// The left factor is estimated by averaging the Radon-Nikodym derivative
// dP~(theta | psi, x) / dP(theta) at theta0 over draws of psi from the
// auxiliary posterior; the right factor by averaging dP0(psi) / dP(psi | theta)
// over draws from the full posterior. The two averages must come from
// independent samples for their product to be unbiased.

#ifndef GSDR_SDR_HPP
#define GSDR_SDR_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsdr {

/// Stateful stream of posterior draws. Burn-in is consumed before the first
/// call returns.
template <class Draw>
using DrawStream = std::function<Draw()>;

/// Builds a fresh, independently seeded draw stream.
template <class Draw>
using SamplerFactory = std::function<DrawStream<Draw>(std::uint64_t seed)>;

template <class Draw>
using Evaluator = std::function<double(const Draw&)>;

template <class Draw>
struct NestedProblem {
  SamplerFactory<Draw> aux_posterior_sampler;
  SamplerFactory<Draw> full_posterior_sampler;
  /// dP~(theta | psi, x) / dP(theta) at theta0.
  Evaluator<Draw> left_evaluator;
  /// dP0(psi) / dP(psi | theta) at psi.
  Evaluator<Draw> right_evaluator;
};

struct EstimatorOptions {
  /// Accumulate the sum of evaluator outputs with log-sum-exp. The result is
  /// still the arithmetic mean of the outputs, not a mean of logs.
  bool log_space = false;
};

struct TermEstimate {
  double mean = 0.0;
  /// Sample sd / sqrt(N). For Markov-chain draws this ignores autocorrelation
  /// and is a lower bound on the true Monte Carlo error.
  double std_error = 0.0;
  std::size_t n_draws = 0;

  friend bool operator==(const TermEstimate&, const TermEstimate&) = default;
};

struct BayesFactorEstimate {
  TermEstimate left;
  TermEstimate right;
  double b01 = 0.0;

  friend bool operator==(const BayesFactorEstimate&, const BayesFactorEstimate&) = default;
};

struct ReplicateSummary {
  std::vector<BayesFactorEstimate> estimates;
  double mean_b01 = 0.0;
  /// Sample sd across replicates; 0 when only one replicate exists.
  double sd_b01 = 0.0;
  bool sd_available = false;
};

/// Evaluator produced NaN, infinity or a negative value.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& term, std::size_t draw_index, double value);
  std::size_t draw_index() const { return draw_index_; }
  double value() const { return value_; }

 private:
  std::size_t draw_index_;
  double value_;
};

class ReplicateError : public std::runtime_error {
 public:
  ReplicateError(std::size_t replicate_index, const std::string& cause);
  std::size_t replicate_index() const { return replicate_index_; }

 private:
  std::size_t replicate_index_;
};

/// Collects evaluator outputs for one term.
class TermAccumulator {
 public:
  TermAccumulator(std::string term, EstimatorOptions options, std::size_t reserve = 0);

  /// Throws EvaluationError for a non-finite or negative value.
  void add(double value);
  TermEstimate finish() const;

 private:
  std::string term_;
  EstimatorOptions options_;
  std::vector<double> values_;
};

template <class Draw>
TermEstimate estimate_term(const SamplerFactory<Draw>& sampler, const Evaluator<Draw>& evaluator,
                           const std::string& term, std::size_t n_draws, std::uint64_t seed,
                           EstimatorOptions options = {}) {
  if (n_draws == 0) throw std::invalid_argument("n_draws must be at least 1");
  DrawStream<Draw> stream = sampler(seed);
  TermAccumulator acc(term, options, n_draws);
  for (std::size_t i = 0; i < n_draws; ++i) acc.add(evaluator(stream()));
  return acc.finish();
}

template <class Draw>
TermEstimate estimate_left_term(const NestedProblem<Draw>& problem, std::size_t n_draws,
                                std::uint64_t seed, EstimatorOptions options = {}) {
  return estimate_term(problem.aux_posterior_sampler, problem.left_evaluator, "left", n_draws,
                       seed, options);
}

template <class Draw>
TermEstimate estimate_right_term(const NestedProblem<Draw>& problem, std::size_t n_draws,
                                 std::uint64_t seed, EstimatorOptions options = {}) {
  return estimate_term(problem.full_posterior_sampler, problem.right_evaluator, "right", n_draws,
                       seed, options);
}

BayesFactorEstimate combine_terms(const TermEstimate& left, const TermEstimate& right);

/// The two terms are drawn from separately seeded streams; equal seeds are
/// rejected because the product is unbiased only for independent samples.
template <class Draw>
BayesFactorEstimate estimate_bayes_factor(const NestedProblem<Draw>& problem, std::size_t n_draws,
                                          std::uint64_t seed_left, std::uint64_t seed_right,
                                          EstimatorOptions options = {}) {
  if (seed_left == seed_right) {
    throw std::invalid_argument("left and right term seeds must differ");
  }
  const TermEstimate left = estimate_left_term(problem, n_draws, seed_left, options);
  const TermEstimate right = estimate_right_term(problem, n_draws, seed_right, options);
  return combine_terms(left, right);
}

struct ReplicateConfig {
  std::size_t n_draws = 5000;
  std::size_t replicates = 30;
  std::uint64_t root_seed = 0;
  /// Worker threads across replicates; 0 selects the hardware concurrency.
  unsigned threads = 0;
  EstimatorOptions options;
};

struct ReplicateSeeds {
  std::uint64_t problem = 0;
  std::uint64_t left = 0;
  std::uint64_t right = 0;
};

/// Per-replicate seeds derived from a root seed. All 3 * count seeds are
/// pairwise distinct.
std::vector<ReplicateSeeds> replicate_seeds(std::uint64_t root_seed, std::size_t count);

ReplicateSummary summarize(std::vector<BayesFactorEstimate> estimates);

/// Runs body(i) for i in [0, count) on up to `threads` workers. If any call
/// throws, rethrows the failure with the lowest index as a ReplicateError.
void run_indexed(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

template <class Draw>
using ProblemFactory = std::function<NestedProblem<Draw>(std::uint64_t seed)>;

template <class Draw>
ReplicateSummary replicate(const ProblemFactory<Draw>& factory, const ReplicateConfig& config) {
  if (config.replicates == 0) throw std::invalid_argument("replicates must be at least 1");
  if (config.n_draws == 0) throw std::invalid_argument("n_draws must be at least 1");
  const std::vector<ReplicateSeeds> seeds = replicate_seeds(config.root_seed, config.replicates);
  std::vector<BayesFactorEstimate> estimates(config.replicates);
  run_indexed(config.replicates, config.threads, [&](std::size_t r) {
    const NestedProblem<Draw> problem = factory(seeds[r].problem);
    estimates[r] = estimate_bayes_factor(problem, config.n_draws, seeds[r].left, seeds[r].right,
                                         config.options);
  });
  return summarize(std::move(estimates));
}

}  // namespace gsdr

#endif  // GSDR_SDR_HPP
