#include <iomanip>

#include "gsdr/experiment.hpp"

namespace gsdr {

using nlohmann::json;

namespace {

json term_json(const TermEstimate& t) {
  return {{"mean", t.mean}, {"std_error", t.std_error}, {"n_draws", t.n_draws}};
}

TermEstimate term_from(const json& j) {
  return TermEstimate{j.at("mean").get<double>(), j.at("std_error").get<double>(),
                      j.at("n_draws").get<std::size_t>()};
}

json chain_json(const ChainDiagnostics& d) {
  return {{"retained_sweeps", d.retained_sweeps},
          {"mean_clusters", d.mean_clusters},
          {"acceptance_rate", d.acceptance_rate},
          {"log_step", d.log_step}};
}

ChainDiagnostics chain_from(const json& j) {
  ChainDiagnostics d;
  d.retained_sweeps = j.at("retained_sweeps").get<std::size_t>();
  d.mean_clusters = j.at("mean_clusters").get<double>();
  d.acceptance_rate = j.at("acceptance_rate").get<double>();
  d.log_step = j.at("log_step").get<double>();
  return d;
}

json config_json(const RunConfig& c) {
  return {{"n_draws", c.n_draws},
          {"replicates", c.replicates},
          {"burn_in", c.burn_in},
          {"thinning", c.thinning},
          {"root_seed", c.root_seed},
          {"hyper",
           {{"m", c.hyper.m},
            {"sigma2", c.hyper.sigma2},
            {"nu1", c.hyper.nu1},
            {"nu2", c.hyper.nu2},
            {"k", c.hyper.k},
            {"alpha0", c.hyper.alpha0}}},
          {"gamma_parameterization", to_string(c.hyper.gamma_convention)},
          {"data_path", c.data_path},
          {"data_column", c.data_column ? json(*c.data_column) : json(nullptr)},
          {"parallel", c.parallel}};
}

RunConfig config_from(const json& j) {
  RunConfig c;
  c.n_draws = j.at("n_draws").get<std::size_t>();
  c.replicates = j.at("replicates").get<std::size_t>();
  c.burn_in = j.at("burn_in").get<std::size_t>();
  c.thinning = j.at("thinning").get<std::size_t>();
  c.root_seed = j.at("root_seed").get<std::uint64_t>();
  const json& h = j.at("hyper");
  c.hyper.m = h.at("m").get<double>();
  c.hyper.sigma2 = h.at("sigma2").get<double>();
  c.hyper.nu1 = h.at("nu1").get<double>();
  c.hyper.nu2 = h.at("nu2").get<double>();
  c.hyper.k = h.at("k").get<double>();
  c.hyper.alpha0 = h.at("alpha0").get<double>();
  c.hyper.gamma_convention = parse_gamma_convention(j.at("gamma_parameterization").get<std::string>());
  c.data_path = j.at("data_path").get<std::string>();
  if (!j.at("data_column").is_null()) c.data_column = j.at("data_column").get<std::size_t>();
  c.parallel = j.at("parallel").get<unsigned>();
  return c;
}

}  // namespace

bool same_results(const RunReport& a, const RunReport& b) {
  RunReport b_copy = b;
  b_copy.wall_clock_seconds = a.wall_clock_seconds;
  return a == b_copy;
}

json report_to_json(const RunReport& report) {
  json reps = json::array();
  for (const auto& r : report.replicates) {
    reps.push_back({{"index", r.index},
                    {"seeds",
                     {{"problem", r.seeds.problem}, {"left", r.seeds.left}, {"right", r.seeds.right}}},
                    {"b01", r.estimate.b01},
                    {"left", term_json(r.estimate.left)},
                    {"right", term_json(r.estimate.right)},
                    {"diagnostics",
                     {{"auxiliary", chain_json(r.diagnostics.auxiliary)},
                      {"full", chain_json(r.diagnostics.full)}}}});
  }
  return {{"config", config_json(report.config)},
          {"n_observations", report.n_observations},
          {"replicates", reps},
          {"summary",
           {{"mean_b01", report.mean_b01},
            {"sd_b01", report.sd_b01},
            {"sd_available", report.sd_available}}},
          {"wall_clock_seconds", report.wall_clock_seconds}};
}

RunReport report_from_json(const json& doc) {
  RunReport report;
  report.config = config_from(doc.at("config"));
  report.n_observations = doc.at("n_observations").get<std::size_t>();
  for (const json& r : doc.at("replicates")) {
    ReplicateRecord rec;
    rec.index = r.at("index").get<std::size_t>();
    rec.seeds.problem = r.at("seeds").at("problem").get<std::uint64_t>();
    rec.seeds.left = r.at("seeds").at("left").get<std::uint64_t>();
    rec.seeds.right = r.at("seeds").at("right").get<std::uint64_t>();
    rec.estimate.b01 = r.at("b01").get<double>();
    rec.estimate.left = term_from(r.at("left"));
    rec.estimate.right = term_from(r.at("right"));
    rec.diagnostics.auxiliary = chain_from(r.at("diagnostics").at("auxiliary"));
    rec.diagnostics.full = chain_from(r.at("diagnostics").at("full"));
    report.replicates.push_back(rec);
  }
  const json& summary = doc.at("summary");
  report.mean_b01 = summary.at("mean_b01").get<double>();
  report.sd_b01 = summary.at("sd_b01").get<double>();
  report.sd_available = summary.at("sd_available").get<bool>();
  report.wall_clock_seconds = doc.at("wall_clock_seconds").get<double>();
  return report;
}

void write_replicate_csv(const RunReport& report, std::ostream& os) {
  os << "index,b01,left_mean,left_std_error,right_mean,right_std_error,"
        "aux_mean_clusters,full_mean_clusters,full_acceptance_rate\n";
  os << std::setprecision(17);
  for (const auto& r : report.replicates) {
    os << r.index << ',' << r.estimate.b01 << ',' << r.estimate.left.mean << ','
       << r.estimate.left.std_error << ',' << r.estimate.right.mean << ','
       << r.estimate.right.std_error << ',' << r.diagnostics.auxiliary.mean_clusters << ','
       << r.diagnostics.full.mean_clusters << ',' << r.diagnostics.full.acceptance_rate << '\n';
  }
}

}  // namespace gsdr
