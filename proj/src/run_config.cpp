#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "gsdr/experiment.hpp"

namespace gsdr {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view text, std::size_t line, std::string_view key) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("line " + std::to_string(line) + ": bad value for " + std::string(key) +
                      ": '" + std::string(text) + "'");
  }
  return value;
}

template <class T>
void apply(const std::optional<T>& value, T& target) {
  if (value) target = *value;
}

void apply_overrides(const ConfigOverrides& o, RunConfig& c) {
  apply(o.n_draws, c.n_draws);
  apply(o.replicates, c.replicates);
  apply(o.burn_in, c.burn_in);
  apply(o.thinning, c.thinning);
  apply(o.root_seed, c.root_seed);
  apply(o.m, c.hyper.m);
  apply(o.sigma2, c.hyper.sigma2);
  apply(o.nu1, c.hyper.nu1);
  apply(o.nu2, c.hyper.nu2);
  apply(o.k, c.hyper.k);
  apply(o.alpha0, c.hyper.alpha0);
  apply(o.gamma_parameterization, c.hyper.gamma_convention);
  apply(o.data_path, c.data_path);
  if (o.data_column) c.data_column = *o.data_column;
  apply(o.parallel, c.parallel);
}

}  // namespace

GammaConvention parse_gamma_convention(const std::string& text) {
  if (text == "shape-rate" || text == "rate") return GammaConvention::shape_rate;
  if (text == "shape-scale" || text == "scale") return GammaConvention::shape_scale;
  throw ConfigError("unknown gamma parameterization '" + text + "'");
}

std::string to_string(GammaConvention convention) {
  return convention == GammaConvention::shape_rate ? "shape-rate" : "shape-scale";
}

void RunConfig::validate() const {
  if (n_draws == 0) throw ConfigError("n_draws must be at least 1");
  if (replicates == 0) throw ConfigError("replicates must be at least 1");
  if (thinning == 0) throw ConfigError("thinning must be at least 1");
  try {
    hyper.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

ConfigOverrides parse_config_text(const std::string& text) {
  ConfigOverrides out;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "n_draws") {
      out.n_draws = parse_number<std::size_t>(value, line_no, key);
    } else if (key == "replicates") {
      out.replicates = parse_number<std::size_t>(value, line_no, key);
    } else if (key == "burn_in") {
      out.burn_in = parse_number<std::size_t>(value, line_no, key);
    } else if (key == "thinning") {
      out.thinning = parse_number<std::size_t>(value, line_no, key);
    } else if (key == "root_seed") {
      out.root_seed = parse_number<std::uint64_t>(value, line_no, key);
    } else if (key == "m") {
      out.m = parse_number<double>(value, line_no, key);
    } else if (key == "sigma2") {
      out.sigma2 = parse_number<double>(value, line_no, key);
    } else if (key == "nu1") {
      out.nu1 = parse_number<double>(value, line_no, key);
    } else if (key == "nu2") {
      out.nu2 = parse_number<double>(value, line_no, key);
    } else if (key == "k") {
      out.k = parse_number<double>(value, line_no, key);
    } else if (key == "alpha0") {
      out.alpha0 = parse_number<double>(value, line_no, key);
    } else if (key == "gamma_parameterization") {
      out.gamma_parameterization = parse_gamma_convention(std::string(value));
    } else if (key == "data_path") {
      out.data_path = std::string(value);
    } else if (key == "data_column") {
      out.data_column = parse_number<std::size_t>(value, line_no, key);
    } else if (key == "parallel") {
      out.parallel = parse_number<unsigned>(value, line_no, key);
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) +
                        "'");
    }
  }
  return out;
}

ConfigOverrides load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

RunConfig resolve_config(const ConfigOverrides& file, const ConfigOverrides& flags) {
  RunConfig config;
  apply_overrides(file, config);
  apply_overrides(flags, config);
  config.validate();
  return config;
}

}  // namespace gsdr
