// gsdr: Bayes factors by the generalized Savage-Dickey ratio.

#include <algorithm>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "gsdr/experiment.hpp"

namespace {

using gsdr::ConfigOverrides;

template <class T>
void add_override(CLI::App& app, const std::string& flag, std::optional<T>& slot,
                  const std::string& help) {
  app.add_option_function<T>(flag, [&slot](const T& v) { slot = v; }, help);
}

int run_dp(const std::string& config_path, const ConfigOverrides& flags,
           const std::string& out_path, const std::string& csv_path) {
  const ConfigOverrides file =
      config_path.empty() ? ConfigOverrides{} : gsdr::load_config_file(config_path);
  const gsdr::RunConfig config = gsdr::resolve_config(file, flags);
  const gsdr::RunReport report = gsdr::run_dp_experiment(config);

  const std::string text = gsdr::report_to_json(report).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
  }
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("cannot write " + csv_path);
    gsdr::write_replicate_csv(report, csv);
  }
  std::cerr << "mean B01 = " << report.mean_b01 << ", sd = " << report.sd_b01 << " over "
            << report.replicates.size() << " replicates (" << report.wall_clock_seconds << " s)\n";
  return 0;
}

int run_selftests(const std::string& suite, std::uint64_t seed) {
  std::vector<gsdr::SelftestSuite> suites;
  if (suite == "all") {
    suites = {gsdr::SelftestSuite::discrete, gsdr::SelftestSuite::gaussian,
              gsdr::SelftestSuite::polya, gsdr::SelftestSuite::conditionals};
  } else {
    suites = {gsdr::parse_selftest_suite(suite)};
  }
  bool ok = true;
  for (auto s : suites) {
    for (const auto& r : gsdr::run_selftest(s, seed)) {
      std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  [" << r.metric
                << " <= " << r.threshold << "]";
      if (!r.detail.empty()) std::cout << "  " << r.detail;
      std::cout << '\n';
      ok = ok && r.passed;
    }
  }
  return ok ? 0 : 1;
}

int run_ingest_check(const std::string& path, std::optional<std::size_t> column) {
  const std::vector<double> xs = gsdr::ingest_series(path, column);
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  double sum = 0.0;
  for (double x : xs) sum += x;
  std::cout << "count " << xs.size() << "\nmin " << *lo << "\nmax " << *hi << "\nmean "
            << sum / static_cast<double>(xs.size()) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayes factors for nested models via the generalized Savage-Dickey ratio"};
  app.require_subcommand(1);

  ConfigOverrides flags;
  std::string config_path;
  std::string out_path;
  std::string csv_path;
  auto* dp = app.add_subcommand("dp-run", "Dirichlet-process Bayes factor experiment");
  dp->add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
  add_override(*dp, "--data", flags.data_path, "data file (default: bundled Old Faithful)");
  add_override(*dp, "--column", flags.data_column, "zero-based column for comma-separated data");
  add_override(*dp, "--draws", flags.n_draws, "retained draws per term (N)");
  add_override(*dp, "--replicates", flags.replicates, "independent replicates");
  add_override(*dp, "--burn-in", flags.burn_in, "burn-in sweeps per chain");
  add_override(*dp, "--thinning", flags.thinning, "sweeps between retained draws");
  add_override(*dp, "--seed", flags.root_seed, "root seed");
  add_override(*dp, "--m", flags.m, "base-measure mean");
  add_override(*dp, "--sigma2", flags.sigma2, "base-measure variance");
  add_override(*dp, "--nu1", flags.nu1, "Gamma prior shape");
  add_override(*dp, "--nu2", flags.nu2, "Gamma prior rate (or scale)");
  add_override(*dp, "--k", flags.k, "kernel variance numerator");
  add_override(*dp, "--alpha0", flags.alpha0, "alpha under the simple model");
  add_override(*dp, "--parallel", flags.parallel, "worker threads (0 = all processors)");
  dp->add_option_function<std::string>(
        "--gamma-param",
        [&flags](const std::string& v) { flags.gamma_parameterization = gsdr::parse_gamma_convention(v); },
        "Gamma(nu1, nu2) convention")
      ->check(CLI::IsMember({"rate", "scale", "shape-rate", "shape-scale"}));
  dp->add_option("--out", out_path, "report path (default: standard output)");
  dp->add_option("--csv", csv_path, "optional per-replicate CSV");

  std::string suite = "all";
  std::uint64_t selftest_seed = 1;
  auto* st = app.add_subcommand("selftest", "run oracle-backed verification suites");
  st->add_option("suite", suite, "discrete | gaussian | polya | conditionals | all")
      ->check(CLI::IsMember({"discrete", "gaussian", "polya", "conditionals", "all"}));
  st->add_option("--seed", selftest_seed, "seed for the Monte Carlo checks");

  std::string ingest_path = gsdr::bundled_faithful_path().string();
  std::optional<std::size_t> ingest_column;
  auto* ic = app.add_subcommand("ingest-check", "parse a data file and print its summary");
  ic->add_option("--data", ingest_path, "data file");
  add_override(*ic, "--column", ingest_column, "zero-based column for comma-separated data");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*dp) return run_dp(config_path, flags, out_path, csv_path);
    if (*st) return run_selftests(suite, selftest_seed);
    if (*ic) return run_ingest_check(ingest_path, ingest_column);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
