// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "gsdr/checks.hpp"
#include "gsdr/experiment.hpp"
#include "gsdr/oracles.hpp"

using namespace gsdr;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string join_failures(const std::vector<checks::CheckResult>& results) {
  std::ostringstream os;
  std::size_t failed = 0;
  for (const auto& r : results) {
    if (r.passed) continue;
    os << (failed++ ? "; " : "") << r.name << " (" << r.metric << " > " << r.threshold << ")";
  }
  if (failed == 0) os << results.size() << " checks passed";
  return os.str();
}

Outcome headline() {
  const RunReport report = run_dp_experiment(RunConfig{});
  const bool mean_ok = report.mean_b01 >= 3.1 && report.mean_b01 <= 4.7;
  const bool sd_ok = report.sd_b01 >= 0.2 && report.sd_b01 <= 0.8;
  double aux_d = 0.0, full_d = 0.0, acc = 0.0;
  for (const auto& r : report.replicates) {
    aux_d += r.diagnostics.auxiliary.mean_clusters;
    full_d += r.diagnostics.full.mean_clusters;
    acc += r.diagnostics.full.acceptance_rate;
  }
  const double reps = static_cast<double>(report.replicates.size());
  std::ostringstream os;
  os << "mean B01 = " << report.mean_b01 << " (want [3.1, 4.7]), sd = " << report.sd_b01
     << " (want [0.2, 0.8]); mean d aux/full = " << aux_d / reps << "/" << full_d / reps
     << ", acceptance = " << acc / reps << ", " << report.wall_clock_seconds << " s";
  return {mean_ok && sd_ok, os.str()};
}

Outcome discrete_unbiasedness() {
  const DiscreteNestedSpec spec = two_by_two_spec();
  const double exact = oracle::discrete_brute_force_bayes_factor(spec);
  const bool hand_value = std::abs(exact - 1.2) <= 1e-12;

  const auto problem = discrete_problem_adapter(spec);
  const auto seeds = replicate_seeds(2024, 200);
  std::vector<double> b;
  for (const auto& s : seeds) b.push_back(estimate_bayes_factor(problem, 10000, s.left, s.right).b01);
  const double mean = oracle::sample_mean(b);
  const double se = std::sqrt(oracle::sample_variance(b) / static_cast<double>(b.size()));
  const double z = std::abs(mean - exact) / se;
  std::ostringstream os;
  os << "enumerated B01 = " << exact << ", grand mean = " << mean << ", |z| = " << z;
  return {hand_value && z <= 3.0, os.str()};
}

Outcome gaussian_accuracy() {
  bool ok = true;
  std::ostringstream os;
  for (double rho : {0.0, 0.5}) {
    const GaussianNestedSpec spec = checks::reference_gaussian_spec(rho);
    const double closed = gaussian_exact_bayes_factor(spec);
    const double quad = oracle::gaussian_quadrature_bayes_factor(spec);
    const double quad_rel = std::abs(closed - quad) / quad;
    const auto est = estimate_bayes_factor(gaussian_problem_adapter(spec), 100000,
                                           derive_seed(7, 2), derive_seed(7, 3));
    const double rel = std::abs(est.b01 - closed) / closed;
    ok = ok && quad_rel <= 1e-8 && rel <= 0.02;
    os << "rho=" << rho << ": rel err " << rel << ", quadrature " << quad_rel << "; ";
  }
  return {ok, os.str()};
}

Outcome suite(const std::vector<checks::CheckResult>& results) {
  return {checks::all_passed(results), join_failures(results)};
}

Outcome geweke() {
  std::vector<checks::CheckResult> all;
  for (DpModel model : {DpModel::auxiliary, DpModel::full}) {
    for (auto& r : checks::geweke_suite(model, 10, 100000, 606)) all.push_back(std::move(r));
  }
  double worst = 0.0;
  for (const auto& r : all) worst = std::max(worst, r.metric);
  Outcome out = suite(all);
  out.detail += ", max |z| = " + std::to_string(worst);
  return out;
}

Outcome determinism() {
  RunConfig c;
  c.n_draws = 300;
  c.replicates = 4;
  c.burn_in = 200;
  c.root_seed = 31337;
  c.parallel = 1;
  const RunReport a = run_dp_experiment(c);
  const RunReport b = run_dp_experiment(c);
  c.parallel = 2;
  RunReport threaded = run_dp_experiment(c);
  threaded.config.parallel = 1;
  const bool same = same_results(a, b);
  const bool same_threaded = same_results(a, threaded);
  std::ostringstream os;
  os << "repeat run identical: " << (same ? "yes" : "no")
     << ", 2-thread run identical: " << (same_threaded ? "yes" : "no");
  return {same && same_threaded, os.str()};
}

Outcome convergence() {
  const double d = checks::discrete_convergence_slope(808, 50);
  const double g = checks::gaussian_convergence_slope(809, 50);
  const auto in_band = [](double s) { return s >= -0.65 && s <= -0.35; };
  std::ostringstream os;
  os << "slopes discrete " << d << ", gaussian " << g << " (want [-0.65, -0.35])";
  return {in_band(d) && in_band(g), os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 headline Old Faithful B01", headline},
      {"2 discrete unbiasedness", discrete_unbiasedness},
      {"3 Gaussian accuracy", gaussian_accuracy},
      {"4 Polya-urn ratio exactness", [] { return suite(checks::polya_suite()); }},
      {"5 conditional correctness", [] { return suite(checks::conditionals_suite(505)); }},
      {"6 Geweke sampler validity", geweke},
      {"7 determinism", determinism},
      {"8 convergence rate", convergence},
  };

  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failures += out.passed ? 0 : 1;
    std::cout << (out.passed ? "PASS  " : "FAIL  ") << name << "  " << out.detail << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
