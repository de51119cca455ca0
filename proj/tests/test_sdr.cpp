#include <cmath>
#include <limits>
#include <memory>
#include <set>

#include "doctest.h"

#include "gsdr/random.hpp"
#include "gsdr/sdr.hpp"
#include "gsdr/validation.hpp"

using namespace gsdr;

namespace {

// Uniform(0, 1) draws; evaluators are supplied per test.
SamplerFactory<double> uniform_sampler() {
  return [](std::uint64_t seed) {
    auto rng = std::make_shared<Rng>(make_rng(seed));
    return DrawStream<double>([rng] { return sample_uniform(*rng); });
  };
}

NestedProblem<double> toy_problem(Evaluator<double> left, Evaluator<double> right) {
  return NestedProblem<double>{uniform_sampler(), uniform_sampler(), std::move(left),
                               std::move(right)};
}

}  // namespace

TEST_CASE("constant evaluators give mean 1 and zero standard error") {
  const auto one = [](const double&) { return 1.0; };
  const auto est = estimate_bayes_factor(toy_problem(one, one), 500, 1, 2);
  CHECK(est.left.mean == 1.0);
  CHECK(est.right.mean == 1.0);
  CHECK(est.left.std_error == 0.0);
  CHECK(est.right.std_error == 0.0);
  CHECK(est.b01 == 1.0);
  CHECK(est.left.n_draws == 500);
}

TEST_CASE("non-finite or negative evaluator output names the draw") {
  for (double bad : {std::numeric_limits<double>::quiet_NaN(),
                     std::numeric_limits<double>::infinity(), -0.5}) {
    std::size_t calls = 0;
    const Evaluator<double> eval = [&](const double&) { return ++calls == 7 ? bad : 1.0; };
    try {
      estimate_left_term(toy_problem(eval, eval), 100, 3);
      FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
      CHECK(e.draw_index() == 6);
    }
  }
}

TEST_CASE("equal term seeds are rejected") {
  const auto one = [](const double&) { return 1.0; };
  CHECK_THROWS_AS(estimate_bayes_factor(toy_problem(one, one), 10, 5, 5), std::invalid_argument);
  CHECK_THROWS_AS(estimate_bayes_factor(toy_problem(one, one), 0, 5, 6), std::invalid_argument);
}

TEST_CASE("same seeds reproduce the estimate exactly") {
  const auto id = [](const double& u) { return u; };
  const auto sq = [](const double& u) { return u * u; };
  const auto a = estimate_bayes_factor(toy_problem(id, sq), 1000, 11, 12);
  const auto b = estimate_bayes_factor(toy_problem(id, sq), 1000, 11, 12);
  CHECK(a == b);
  const auto c = estimate_bayes_factor(toy_problem(id, sq), 1000, 11, 13);
  CHECK(c.right.mean != a.right.mean);
}

TEST_CASE("scaling an evaluator by a power of two scales the term exactly") {
  const auto id = [](const double& u) { return u; };
  const auto twice = [](const double& u) { return 2.0 * u; };
  const auto base = estimate_left_term(toy_problem(id, id), 777, 21);
  const auto scaled = estimate_left_term(toy_problem(twice, id), 777, 21);
  CHECK(scaled.mean == 2.0 * base.mean);
  CHECK(scaled.std_error == 2.0 * base.std_error);
}

TEST_CASE("log-space accumulation gives the same arithmetic mean") {
  const auto ev = [](const double& u) { return std::exp(10.0 * u); };
  const auto lin = estimate_left_term(toy_problem(ev, ev), 2000, 8);
  const auto log = estimate_left_term(toy_problem(ev, ev), 2000, 8, EstimatorOptions{true});
  CHECK(log.mean == doctest::Approx(lin.mean).epsilon(1e-12));
  CHECK(log.std_error == doctest::Approx(lin.std_error).epsilon(1e-9));

  // Values that overflow a linear sum stay representable in log mode.
  const auto huge = [](const double&) { return 1e308; };
  const auto big = estimate_left_term(toy_problem(huge, huge), 10, 8, EstimatorOptions{true});
  CHECK(big.mean == doctest::Approx(1e308).epsilon(1e-12));
}

TEST_CASE("estimates are nonnegative") {
  const auto ev = [](const double& u) { return u < 0.5 ? 0.0 : u; };
  const auto est = estimate_bayes_factor(toy_problem(ev, ev), 1000, 1, 2);
  CHECK(est.left.mean >= 0.0);
  CHECK(est.b01 >= 0.0);
}

TEST_CASE("replicate seeds are pairwise distinct and deterministic") {
  const auto seeds = replicate_seeds(42, 100);
  std::set<std::uint64_t> all;
  for (const auto& s : seeds) {
    all.insert(s.problem);
    all.insert(s.left);
    all.insert(s.right);
  }
  CHECK(all.size() == 300);
  const auto again = replicate_seeds(42, 100);
  CHECK(again.front().left == seeds.front().left);
  CHECK(again.back().right == seeds.back().right);
}

TEST_CASE("replicate summaries") {
  const auto one = [](const double&) { return 1.0; };
  const ProblemFactory<double> factory = [&](std::uint64_t) { return toy_problem(one, one); };

  SUBCASE("a single replicate has no spread") {
    ReplicateConfig rc;
    rc.n_draws = 10;
    rc.replicates = 1;
    const auto s = replicate(factory, rc);
    CHECK(s.estimates.size() == 1);
    CHECK(s.sd_b01 == 0.0);
    CHECK_FALSE(s.sd_available);
  }
  SUBCASE("thirty constant replicates") {
    ReplicateConfig rc;
    rc.n_draws = 10;
    rc.replicates = 30;
    rc.threads = 3;
    const auto s = replicate(factory, rc);
    CHECK(s.mean_b01 == 1.0);
    CHECK(s.sd_b01 == 0.0);
    CHECK(s.sd_available);
  }
}

TEST_CASE("replicate results do not depend on the thread count") {
  const auto id = [](const double& u) { return u; };
  const ProblemFactory<double> factory = [&](std::uint64_t) { return toy_problem(id, id); };
  ReplicateConfig rc;
  rc.n_draws = 200;
  rc.replicates = 12;
  rc.root_seed = 9;
  rc.threads = 1;
  const auto serial = replicate(factory, rc);
  rc.threads = 4;
  const auto parallel = replicate(factory, rc);
  CHECK(serial.estimates == parallel.estimates);
  CHECK(serial.mean_b01 == parallel.mean_b01);
}

TEST_CASE("a failing replicate is reported by index") {
  const auto seeds = replicate_seeds(3, 6);
  const std::uint64_t bad_problem = seeds[4].problem;
  const ProblemFactory<double> factory = [&](std::uint64_t seed) {
    const double v = seed == bad_problem ? -1.0 : 1.0;
    const Evaluator<double> ev = [v](const double&) { return v; };
    return toy_problem(ev, ev);
  };
  ReplicateConfig rc;
  rc.n_draws = 5;
  rc.replicates = 6;
  rc.root_seed = 3;
  rc.threads = 2;
  try {
    replicate(factory, rc);
    FAIL("expected ReplicateError");
  } catch (const ReplicateError& e) {
    CHECK(e.replicate_index() == 4);
  }
}

TEST_CASE("discrete estimator is unbiased over repeated runs") {
  const DiscreteNestedSpec spec = two_by_two_spec();
  const auto problem = discrete_problem_adapter(spec);
  const double exact = discrete_exact_bayes_factor(spec);
  std::vector<double> b;
  for (std::uint64_t r = 0; r < 200; ++r) {
    b.push_back(estimate_bayes_factor(problem, 1000, 2 * r + 100, 2 * r + 101).b01);
  }
  double mean = 0.0;
  for (double x : b) mean += x;
  mean /= static_cast<double>(b.size());
  double var = 0.0;
  for (double x : b) var += (x - mean) * (x - mean);
  var /= static_cast<double>(b.size() - 1);
  const double se = std::sqrt(var / static_cast<double>(b.size()));
  CHECK(std::abs(mean - exact) <= 3.0 * se);
}
