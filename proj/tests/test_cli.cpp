#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "doctest.h"

#include "gsdr/experiment.hpp"

using namespace gsdr;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "gsdr_test_cli";
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream(path) << text;
  return path;
}

int exit_status(const std::string& command) {
  const int raw = std::system(command.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

RunConfig smoke_config() {
  RunConfig c;
  c.n_draws = 10;
  c.replicates = 1;
  c.burn_in = 0;
  c.parallel = 1;
  return c;
}

}  // namespace

TEST_CASE("ingest one value per line") {
  CHECK(ingest_series(write_temp("two.txt", "1.0\n2.0\n")) == std::vector<double>{1.0, 2.0});
  CHECK(ingest_series(write_temp("comments.txt", "# header\n\n 3.5 \n-1e-3\n")) ==
        std::vector<double>{3.5, -1e-3});
}

TEST_CASE("ingest reports the offending line") {
  const auto path = write_temp("bad.txt", "1.0\n2.0\nabc\n");
  try {
    ingest_series(path);
    FAIL("expected IngestError");
  } catch (const IngestError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
  CHECK_THROWS_AS(ingest_series(write_temp("inf.txt", "inf\n")), IngestError);
}

TEST_CASE("ingest rejects empty and missing files") {
  CHECK_THROWS_AS(ingest_series(write_temp("empty.txt", "")), IngestError);
  CHECK_THROWS_AS(ingest_series(write_temp("only_comment.txt", "# nothing\n")), IngestError);
  CHECK_THROWS_AS(ingest_series("/nonexistent/gsdr/file.txt"), IngestError);
}

TEST_CASE("ingest a column of a comma-separated file") {
  const auto path = write_temp("table.csv", "# eruptions,waiting\n3.6,79\n1.8, 54\n");
  CHECK(ingest_series(path, 0) == std::vector<double>{3.6, 1.8});
  CHECK(ingest_series(path, 1) == std::vector<double>{79.0, 54.0});
  CHECK_THROWS_AS(ingest_series(path, 2), IngestError);
}

TEST_CASE("bundled Old Faithful data") {
  const auto xs = ingest_series(bundled_faithful_path());
  REQUIRE(xs.size() == 272);
  double sum = 0.0;
  for (double x : xs) sum += x;
  CHECK(sum / 272.0 == doctest::Approx(3.487783).epsilon(1e-6));
  CHECK(*std::min_element(xs.begin(), xs.end()) == 1.6);
  CHECK(*std::max_element(xs.begin(), xs.end()) == 5.1);
}

TEST_CASE("configuration precedence: defaults, then file, then flags") {
  const RunConfig defaults = resolve_config({}, {});
  CHECK(defaults == RunConfig{});
  CHECK(defaults.hyper.m == 3.0);
  CHECK(defaults.hyper.alpha0 == 0.5);
  CHECK(defaults.n_draws == 5000);
  CHECK(defaults.replicates == 30);

  const std::string text =
      "# every key\n"
      "n_draws = 11\nreplicates = 12\nburn_in = 13\nthinning = 14\nroot_seed = 15\n"
      "m = 1.5\nsigma2 = 2.5\nnu1 = 3.5\nnu2 = 4.5\nk = 5.5\nalpha0 = 6.5\n"
      "gamma_parameterization = shape-scale\ndata_path = /tmp/x.csv\ndata_column = 2\n"
      "parallel = 3\n";
  const ConfigOverrides file = parse_config_text(text);
  const RunConfig from_file = resolve_config(file, {});
  CHECK(from_file.n_draws == 11);
  CHECK(from_file.replicates == 12);
  CHECK(from_file.burn_in == 13);
  CHECK(from_file.thinning == 14);
  CHECK(from_file.root_seed == 15);
  CHECK(from_file.hyper.m == 1.5);
  CHECK(from_file.hyper.sigma2 == 2.5);
  CHECK(from_file.hyper.nu1 == 3.5);
  CHECK(from_file.hyper.nu2 == 4.5);
  CHECK(from_file.hyper.k == 5.5);
  CHECK(from_file.hyper.alpha0 == 6.5);
  CHECK(from_file.hyper.gamma_convention == GammaConvention::shape_scale);
  CHECK(from_file.data_path == "/tmp/x.csv");
  CHECK(from_file.data_column == std::optional<std::size_t>(2));
  CHECK(from_file.parallel == 3);

  ConfigOverrides flags;
  flags.n_draws = 21;
  flags.replicates = 22;
  flags.burn_in = 23;
  flags.thinning = 24;
  flags.root_seed = 25;
  flags.m = -1.0;
  flags.sigma2 = 0.25;
  flags.nu1 = 0.5;
  flags.nu2 = 0.75;
  flags.k = 2.0;
  flags.alpha0 = 0.125;
  flags.gamma_parameterization = GammaConvention::shape_rate;
  flags.data_path = "/tmp/y.txt";
  flags.data_column = 0;
  flags.parallel = 1;
  const RunConfig both = resolve_config(file, flags);
  CHECK(both.n_draws == 21);
  CHECK(both.replicates == 22);
  CHECK(both.burn_in == 23);
  CHECK(both.thinning == 24);
  CHECK(both.root_seed == 25);
  CHECK(both.hyper.m == -1.0);
  CHECK(both.hyper.sigma2 == 0.25);
  CHECK(both.hyper.nu1 == 0.5);
  CHECK(both.hyper.nu2 == 0.75);
  CHECK(both.hyper.k == 2.0);
  CHECK(both.hyper.alpha0 == 0.125);
  CHECK(both.hyper.gamma_convention == GammaConvention::shape_rate);
  CHECK(both.data_path == "/tmp/y.txt");
  CHECK(both.data_column == std::optional<std::size_t>(0));
  CHECK(both.parallel == 1);

  // A flag set on its own leaves the file's other values in place.
  ConfigOverrides one;
  one.k = 9.0;
  const RunConfig mixed = resolve_config(file, one);
  CHECK(mixed.hyper.k == 9.0);
  CHECK(mixed.hyper.m == 1.5);
}

TEST_CASE("configuration errors") {
  try {
    parse_config_text("m = 1\n\nbogus = 2\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config_text("m = one\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("just text\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("gamma_parameterization = weird\n"), ConfigError);
  CHECK_THROWS_AS(resolve_config(parse_config_text("sigma2 = -1\n"), {}), ConfigError);
  CHECK_THROWS_AS(resolve_config(parse_config_text("n_draws = 0\n"), {}), ConfigError);
  CHECK(parse_gamma_convention("rate") == GammaConvention::shape_rate);
  CHECK(parse_gamma_convention("scale") == GammaConvention::shape_scale);
}

TEST_CASE("smoke run, JSON round trip and recomputable summary") {
  RunConfig c = smoke_config();
  c.replicates = 3;
  const RunReport report = run_dp_experiment(c);
  REQUIRE(report.replicates.size() == 3);
  CHECK(report.n_observations == 272);
  CHECK(report.config == c);
  for (const auto& r : report.replicates) {
    CHECK(std::isfinite(r.estimate.b01));
    CHECK(r.estimate.b01 >= 0.0);
    CHECK(r.estimate.left.n_draws == 10);
    CHECK(r.diagnostics.full.retained_sweeps == 10);
  }

  double mean = 0.0;
  for (const auto& r : report.replicates) mean += r.estimate.b01;
  mean /= 3.0;
  double var = 0.0;
  for (const auto& r : report.replicates) var += std::pow(r.estimate.b01 - mean, 2);
  CHECK(report.mean_b01 == doctest::Approx(mean).epsilon(1e-12));
  CHECK(report.sd_b01 == doctest::Approx(std::sqrt(var / 2.0)).epsilon(1e-12));
  CHECK(report.sd_available);

  const RunReport back = report_from_json(nlohmann::json::parse(report_to_json(report).dump()));
  CHECK(back == report);

  std::ostringstream csv;
  write_replicate_csv(report, csv);
  std::size_t lines = 0;
  for (char ch : csv.str()) lines += ch == '\n';
  CHECK(lines == 4);
}

TEST_CASE("a single replicate reports no spread") {
  const RunReport report = run_dp_experiment(smoke_config());
  CHECK(report.replicates.size() == 1);
  CHECK(report.sd_b01 == 0.0);
  CHECK_FALSE(report.sd_available);
}

TEST_CASE("identical seeds give identical reports") {
  RunConfig c = smoke_config();
  c.replicates = 4;
  c.burn_in = 20;
  c.n_draws = 30;
  c.root_seed = 77;
  const RunReport a = run_dp_experiment(c);
  c.parallel = 2;
  const RunReport b = run_dp_experiment(c);
  CHECK(same_results(a, run_dp_experiment(a.config)));
  // The config echoes the thread count; everything else must match.
  RunReport b_same = b;
  b_same.config.parallel = a.config.parallel;
  CHECK(same_results(a, b_same));
  c.root_seed = 78;
  const RunReport other = run_dp_experiment(c);
  CHECK(other.replicates[0].estimate.b01 != a.replicates[0].estimate.b01);
}

TEST_CASE("command-line tool") {
  const std::string exe = GSDR_CLI_PATH;
  const fs::path dir = fs::temp_directory_path() / "gsdr_test_cli";
  fs::create_directories(dir);
  const std::string quiet = " > /dev/null 2>&1";

  CHECK(exit_status(exe + " selftest polya" + quiet) == 0);
  CHECK(exit_status(exe + " selftest nonsense" + quiet) != 0);
  CHECK(exit_status(exe + " ingest-check" + quiet) == 0);
  CHECK(exit_status(exe + " ingest-check --data " + write_temp("bad2.txt", "x\n").string() +
                    quiet) == 1);

  const fs::path out = dir / "run.json";
  const fs::path csv = dir / "run.csv";
  const fs::path cfg = write_temp("run.cfg", "n_draws = 5\nburn_in = 0\nreplicates = 2\n");
  REQUIRE(exit_status(exe + " dp-run --config " + cfg.string() + " --replicates 1 --parallel 1" +
                      " --gamma-param scale --out " + out.string() + " --csv " + csv.string() +
                      quiet) == 0);
  std::ifstream in(out);
  const RunReport report = report_from_json(nlohmann::json::parse(in));
  CHECK(report.config.n_draws == 5);
  CHECK(report.replicates.size() == 1);
  CHECK(report.config.hyper.gamma_convention == GammaConvention::shape_scale);
  CHECK(fs::exists(csv));

  const fs::path bad_cfg = write_temp("bad.cfg", "draws = 5\n");
  CHECK(exit_status(exe + " dp-run --config " + bad_cfg.string() + quiet) == 1);
  CHECK(exit_status(exe + " dp-run --sigma2=-1" + quiet) == 1);
}
