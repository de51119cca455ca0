#include <cmath>

#include "doctest.h"

#include "gsdr/checks.hpp"
#include "gsdr/oracles.hpp"
#include "gsdr/validation.hpp"

using namespace gsdr;

namespace {

DiscreteNestedSpec separable_spec() {
  DiscreteNestedSpec s;
  s.theta_labels = {"t0", "t1", "t2"};
  s.theta0 = 1;
  s.psi_labels = {"a", "b"};
  const std::vector<double> theta_mass{0.2, 0.5, 0.3};
  s.prior0 = {0.6, 0.4};
  s.prior1.assign(3, std::vector<double>(2));
  for (std::size_t t = 0; t < 3; ++t) {
    for (std::size_t p = 0; p < 2; ++p) s.prior1[t][p] = theta_mass[t] * s.prior0[p];
  }
  s.likelihood = {{0.3, 1.2}, {2.0, 0.7}, {0.9, 0.4}};
  return s;
}

}  // namespace

TEST_CASE("2x2 spec has Bayes factor 1.2") {
  const auto spec = two_by_two_spec();
  CHECK_NOTHROW(spec.validate());
  CHECK(discrete_exact_bayes_factor(spec) == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(oracle::discrete_brute_force_bayes_factor(spec) == doctest::Approx(1.2).epsilon(1e-15));
  const auto terms = discrete_exact_terms(spec);
  CHECK(terms.left * terms.right == doctest::Approx(1.2).epsilon(1e-14));
}

TEST_CASE("separable prior gives a right term of exactly 1") {
  const auto spec = separable_spec();
  CHECK(discrete_exact_terms(spec).right == doctest::Approx(1.0).epsilon(1e-14));
  const auto problem = discrete_problem_adapter(spec);
  const auto est = estimate_right_term(problem, 1000, 4);
  CHECK(est.mean == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(est.std_error < 1e-14);
}

TEST_CASE("all prior mass at theta0 gives a left term of 1") {
  DiscreteNestedSpec s = separable_spec();
  s.prior1 = {{0.0, 0.0}, {0.6, 0.4}, {0.0, 0.0}};
  CHECK(discrete_exact_terms(s).left == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(discrete_exact_bayes_factor(s) == doctest::Approx(1.0).epsilon(1e-14));
  const auto est = estimate_left_term(discrete_problem_adapter(s), 500, 9);
  CHECK(est.mean == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("a theta support of just theta0 gives B01 = 1") {
  DiscreteNestedSpec s;
  s.theta_labels = {"t0"};
  s.theta0 = 0;
  s.psi_labels = {"a", "b", "c"};
  s.prior0 = {0.2, 0.3, 0.5};
  s.prior1 = {{0.2, 0.3, 0.5}};
  s.likelihood = {{1.0, 4.0, 0.5}};
  CHECK(discrete_exact_bayes_factor(s) == doctest::Approx(1.0).epsilon(1e-14));
  const auto est = estimate_bayes_factor(discrete_problem_adapter(s), 500, 1, 2);
  CHECK(est.b01 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("malformed discrete specs are rejected") {
  auto bad = two_by_two_spec();
  bad.theta0 = 5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = two_by_two_spec();
  bad.prior0 = {0.5, 0.6};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = two_by_two_spec();
  bad.likelihood[0][0] = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = two_by_two_spec();
  bad.prior1.pop_back();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = two_by_two_spec();
  bad.prior1 = {{0.0, 0.0}, {0.5, 0.5}};
  CHECK_THROWS(discrete_exact_terms(bad));
}

TEST_CASE("discrete suite passes") {
  for (const auto& r : checks::discrete_suite(31)) {
    INFO(r.name << ": " << r.metric << " vs " << r.threshold);
    CHECK(r.passed);
  }
}

TEST_CASE("Gaussian model edge cases") {
  SUBCASE("no data") {
    GaussianNestedSpec s;
    CHECK(gaussian_exact_bayes_factor(s) == 1.0);
  }
  SUBCASE("a near-point prior on theta at theta0") {
    GaussianNestedSpec s = checks::reference_gaussian_spec(0.0);
    s.tau_theta2 = 1e-10;
    CHECK(std::abs(gaussian_exact_bayes_factor(s) - 1.0) < 1e-6);
  }
  SUBCASE("independent priors make the right evaluator exactly 1") {
    const auto problem = gaussian_problem_adapter(checks::reference_gaussian_spec(0.0));
    auto stream = problem.full_posterior_sampler(5);
    for (int t = 0; t < 100; ++t) CHECK(problem.right_evaluator(stream()) == 1.0);
  }
  SUBCASE("SDDR equals the Bayes factor only without correlation") {
    const auto s0 = checks::reference_gaussian_spec(0.0);
    CHECK(gaussian_savage_dickey_ratio(s0) ==
          doctest::Approx(gaussian_exact_bayes_factor(s0)).epsilon(1e-12));
    const auto s5 = checks::reference_gaussian_spec(0.5);
    CHECK(std::abs(gaussian_savage_dickey_ratio(s5) / gaussian_exact_bayes_factor(s5) - 1.0) >
          1e-3);
  }
}

TEST_CASE("invalid Gaussian specs are rejected") {
  GaussianNestedSpec s = checks::reference_gaussian_spec(0.0);
  s.rho = 1.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = checks::reference_gaussian_spec(0.0);
  s.sigma2 = 0.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = checks::reference_gaussian_spec(0.0);
  s.data.push_back(std::nan(""));
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("closed form agrees with quadrature") {
  for (double rho : {-0.7, 0.0, 0.5, 0.9}) {
    GaussianNestedSpec s = checks::reference_gaussian_spec(rho);
    s.theta0 = 0.4;
    s.mean_psi = -0.3;
    const double closed = gaussian_exact_bayes_factor(s);
    const double quad = oracle::gaussian_quadrature_bayes_factor(s);
    CHECK(std::abs(closed - quad) / quad < 1e-8);
  }
}

TEST_CASE("Gaussian suite passes") {
  for (const auto& r : checks::gaussian_suite(41)) {
    INFO(r.name << ": " << r.metric << " vs " << r.threshold);
    CHECK(r.passed);
  }
}
