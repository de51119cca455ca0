#include <chrono>
#include <memory>
#include <unordered_map>

#include "gsdr/experiment.hpp"

namespace gsdr {

RunReport run_dp_experiment(const RunConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  auto data = std::make_shared<const std::vector<double>>(
      ingest_series(config.data_path, config.data_column));

  ReplicateConfig rc;
  rc.n_draws = config.n_draws;
  rc.replicates = config.replicates;
  rc.root_seed = config.root_seed;
  rc.threads = config.parallel;

  // The factory only sees the problem seed; map it back to the replicate slot
  // so each replicate's chain diagnostics land in its own record.
  const std::vector<ReplicateSeeds> seeds = replicate_seeds(config.root_seed, config.replicates);
  std::unordered_map<std::uint64_t, std::size_t> slot;
  std::vector<std::shared_ptr<DpProblemDiagnostics>> diagnostics;
  for (std::size_t r = 0; r < seeds.size(); ++r) {
    slot.emplace(seeds[r].problem, r);
    diagnostics.push_back(std::make_shared<DpProblemDiagnostics>());
  }

  const ChainSchedule schedule{config.burn_in, config.thinning, true};
  const ProblemFactory<ChainState> factory = [&](std::uint64_t seed) {
    return make_dp_problem(data, config.hyper, schedule, diagnostics.at(slot.at(seed)));
  };
  const ReplicateSummary summary = replicate(factory, rc);

  RunReport report;
  report.config = config;
  report.n_observations = data->size();
  for (std::size_t r = 0; r < summary.estimates.size(); ++r) {
    report.replicates.push_back(ReplicateRecord{r, seeds[r], summary.estimates[r], *diagnostics[r]});
  }
  report.mean_b01 = summary.mean_b01;
  report.sd_b01 = summary.sd_b01;
  report.sd_available = summary.sd_available;
  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

SelftestSuite parse_selftest_suite(const std::string& text) {
  if (text == "discrete") return SelftestSuite::discrete;
  if (text == "gaussian") return SelftestSuite::gaussian;
  if (text == "polya") return SelftestSuite::polya;
  if (text == "conditionals") return SelftestSuite::conditionals;
  throw ConfigError("unknown selftest suite '" + text + "'");
}

std::vector<checks::CheckResult> run_selftest(SelftestSuite suite, std::uint64_t seed) {
  switch (suite) {
    case SelftestSuite::discrete:
      return checks::discrete_suite(seed);
    case SelftestSuite::gaussian:
      return checks::gaussian_suite(seed);
    case SelftestSuite::polya:
      return checks::polya_suite();
    case SelftestSuite::conditionals: {
      auto out = checks::conditionals_suite(seed);
      for (DpModel model : {DpModel::auxiliary, DpModel::full}) {
        for (auto& r : checks::geweke_suite(model, 10, 100000, derive_seed(seed, 100))) {
          out.push_back(std::move(r));
        }
      }
      return out;
    }
  }
  return {};
}

}  // namespace gsdr
