// Configuration, data ingestion, reporting and orchestration for the
// Dirichlet-process Bayes factor experiment.

#ifndef GSDR_EXPERIMENT_HPP
#define GSDR_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "gsdr/checks.hpp"
#include "gsdr/dp_mixture.hpp"
#include "gsdr/sdr.hpp"

namespace gsdr {

/// Path of the bundled Old Faithful eruption-duration file.
std::filesystem::path bundled_faithful_path();

class IngestError : public std::runtime_error {
 public:
  IngestError(const std::filesystem::path& path, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads a numeric series. Blank lines and lines starting with '#' are
/// skipped. Without `column` each line holds one number; with it, lines are
/// split on commas and the given zero-based column is read.
std::vector<double> ingest_series(const std::filesystem::path& path,
                                  std::optional<std::size_t> column = std::nullopt);

struct RunConfig {
  std::size_t n_draws = 5000;
  std::size_t replicates = 30;
  std::size_t burn_in = 1000;
  std::size_t thinning = 1;
  std::uint64_t root_seed = 1;
  DpHyperParams hyper;
  std::string data_path = bundled_faithful_path().string();
  std::optional<std::size_t> data_column;
  /// Worker threads across replicates; 0 selects the hardware concurrency.
  unsigned parallel = 0;

  void validate() const;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Field values supplied on the command line; unset fields fall through.
struct ConfigOverrides {
  std::optional<std::size_t> n_draws;
  std::optional<std::size_t> replicates;
  std::optional<std::size_t> burn_in;
  std::optional<std::size_t> thinning;
  std::optional<std::uint64_t> root_seed;
  std::optional<double> m;
  std::optional<double> sigma2;
  std::optional<double> nu1;
  std::optional<double> nu2;
  std::optional<double> k;
  std::optional<double> alpha0;
  std::optional<GammaConvention> gamma_parameterization;
  std::optional<std::string> data_path;
  std::optional<std::size_t> data_column;
  std::optional<unsigned> parallel;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Accepts "shape-rate"/"rate" and "shape-scale"/"scale".
GammaConvention parse_gamma_convention(const std::string& text);
std::string to_string(GammaConvention convention);

/// Parses flat `key = value` text whose keys are RunConfig field names
/// (hyperparameters by their own names: m, sigma2, nu1, nu2, k, alpha0).
ConfigOverrides parse_config_text(const std::string& text);
ConfigOverrides load_config_file(const std::filesystem::path& path);

/// Defaults, then the file values, then the command-line values.
RunConfig resolve_config(const ConfigOverrides& file, const ConfigOverrides& flags);

struct ReplicateRecord {
  std::size_t index = 0;
  ReplicateSeeds seeds;
  BayesFactorEstimate estimate;
  DpProblemDiagnostics diagnostics;

  friend bool operator==(const ReplicateRecord& a, const ReplicateRecord& b) {
    return a.index == b.index && a.seeds.problem == b.seeds.problem &&
           a.seeds.left == b.seeds.left && a.seeds.right == b.seeds.right &&
           a.estimate == b.estimate && a.diagnostics == b.diagnostics;
  }
};

struct RunReport {
  RunConfig config;
  std::size_t n_observations = 0;
  std::vector<ReplicateRecord> replicates;
  double mean_b01 = 0.0;
  double sd_b01 = 0.0;
  bool sd_available = false;
  double wall_clock_seconds = 0.0;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

/// Equality ignoring the wall-clock field.
bool same_results(const RunReport& a, const RunReport& b);

nlohmann::json report_to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& doc);

/// One row per replicate.
void write_replicate_csv(const RunReport& report, std::ostream& os);

RunReport run_dp_experiment(const RunConfig& config);

enum class SelftestSuite { discrete, gaussian, polya, conditionals };

SelftestSuite parse_selftest_suite(const std::string& text);

std::vector<checks::CheckResult> run_selftest(SelftestSuite suite, std::uint64_t seed);

}  // namespace gsdr

#endif  // GSDR_EXPERIMENT_HPP
