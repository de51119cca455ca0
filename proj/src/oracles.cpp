#include "gsdr/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace gsdr::oracle {

GridDensity::GridDensity(const std::function<double(double)>& log_density, double lo, double hi,
                         std::size_t cells)
    : lo_(lo), width_((hi - lo) / static_cast<double>(cells)), cum_(cells + 1, 0.0) {
  if (!(hi > lo) || cells == 0) throw std::invalid_argument("bad grid");
  std::vector<double> logs(cells);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < cells; ++c) {
    logs[c] = log_density(lo_ + (static_cast<double>(c) + 0.5) * width_);
    if (std::isfinite(logs[c])) top = std::max(top, logs[c]);
  }
  std::vector<double> mass(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    mass[c] = std::isfinite(logs[c]) ? std::exp(logs[c] - top) : 0.0;
  }
  const double total = std::accumulate(mass.begin(), mass.end(), 0.0);
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::size_t c = 0; c < cells; ++c) {
    mass[c] /= total;
    cum_[c + 1] = cum_[c] + mass[c];
    const double x = lo_ + (static_cast<double>(c) + 0.5) * width_;
    m1 += mass[c] * x;
    m2 += mass[c] * x * x;
  }
  mean_ = m1;
  variance_ = m2 - m1 * m1;
}

double GridDensity::cdf(double x) const {
  const double pos = (x - lo_) / width_;
  if (pos <= 0.0) return 0.0;
  const auto cells = static_cast<double>(cum_.size() - 1);
  if (pos >= cells) return 1.0;
  const auto c = static_cast<std::size_t>(pos);
  return cum_[c] + (pos - static_cast<double>(c)) * (cum_[c + 1] - cum_[c]);
}

double GridDensity::quantile(double p) const {
  const auto it = std::lower_bound(cum_.begin(), cum_.end(), p);
  if (it == cum_.begin()) return lo_;
  if (it == cum_.end()) return lo_ + width_ * static_cast<double>(cum_.size() - 1);
  const auto c = static_cast<std::size_t>(it - cum_.begin()) - 1;
  const double cell_mass = cum_[c + 1] - cum_[c];
  const double frac = cell_mass > 0.0 ? (p - cum_[c]) / cell_mass : 0.0;
  return lo_ + width_ * (static_cast<double>(c) + frac);
}

std::vector<double> GridDensity::equal_mass_edges(std::size_t bins) const {
  std::vector<double> edges;
  for (std::size_t b = 1; b < bins; ++b) {
    edges.push_back(quantile(static_cast<double>(b) / static_cast<double>(bins)));
  }
  return edges;
}

double GridDensity::tv_distance(std::span<const double> samples, std::size_t bins) const {
  const std::vector<double> edges = equal_mass_edges(bins);
  std::vector<double> counts(bins, 0.0);
  for (double x : samples) {
    const auto b = static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), x) -
                                            edges.begin());
    counts[b] += 1.0;
  }
  double tv = 0.0;
  double prev = 0.0;
  for (std::size_t b = 0; b < bins; ++b) {
    const double upper = b + 1 < bins ? cdf(edges[b]) : 1.0;
    tv += std::abs(counts[b] / static_cast<double>(samples.size()) - (upper - prev));
    prev = upper;
  }
  return 0.5 * tv;
}

double binned_tv(std::span<const double> a, std::span<const double> b,
                 std::span<const double> edges) {
  const std::size_t bins = edges.size() + 1;
  auto histogram = [&](std::span<const double> xs) {
    std::vector<double> h(bins, 0.0);
    for (double x : xs) {
      h[static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), x) - edges.begin())] +=
          1.0 / static_cast<double>(xs.size());
    }
    return h;
  };
  const auto ha = histogram(a);
  const auto hb = histogram(b);
  double tv = 0.0;
  for (std::size_t i = 0; i < bins; ++i) tv += std::abs(ha[i] - hb[i]);
  return 0.5 * tv;
}

std::vector<std::vector<std::size_t>> enumerate_partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  if (n == 0) return out;
  std::vector<std::size_t> rgs(n, 0);
  std::vector<std::size_t> prefix_max(n, 0);  // max of rgs[0..i]
  for (;;) {
    out.push_back(rgs);
    // Increment the rightmost position that may still grow.
    std::size_t i = n - 1;
    while (i > 0 && rgs[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) break;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
  return out;
}

double urn_sequence_probability(std::span<const std::size_t> assignment, double alpha) {
  std::vector<double> counts;
  double p = 1.0;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const double denom = alpha + static_cast<double>(i);
    const std::size_t block = assignment[i];
    if (block == counts.size()) {
      p *= alpha / denom;
      counts.push_back(1.0);
    } else {
      p *= counts[block] / denom;
      counts[block] += 1.0;
    }
  }
  return p;
}

std::size_t count_blocks(std::span<const std::size_t> assignment) {
  std::size_t blocks = 0;
  for (std::size_t a : assignment) blocks = std::max(blocks, a + 1);
  return blocks;
}

double extended_gamma_density_ratio(double x, double shape_num, double rate_num, double shape_den,
                                    double rate_den) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  auto density = [&](Big shape, Big rate) {
    const Big bx(x);
    return boost::multiprecision::pow(rate, shape) * boost::multiprecision::pow(bx, shape - 1) *
           boost::multiprecision::exp(-rate * bx) / boost::math::tgamma(shape);
  };
  const Big ratio = density(Big(shape_num), Big(rate_num)) / density(Big(shape_den), Big(rate_den));
  return ratio.convert_to<double>();
}

namespace {

double normal_log_density(double x, double mean, double var) {
  return -0.5 * std::log(2.0 * std::numbers::pi * var) - 0.5 * (x - mean) * (x - mean) / var;
}

}  // namespace

double gaussian_quadrature_bayes_factor(const GaussianNestedSpec& spec) {
  using boost::math::quadrature::gauss_kronrod;
  const std::vector<double>& x = spec.data;
  if (x.empty()) return 1.0;

  // Log-likelihood of theta + psi = t, shifted so its maximum is zero.
  const double xbar = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  auto loglik = [&](double t) {
    double ll = 0.0;
    for (double xi : x) ll += -0.5 * ((xi - t) * (xi - t) - (xi - xbar) * (xi - xbar)) / spec.sigma2;
    return ll;
  };

  const double sd_t = std::sqrt(spec.tau_theta2);
  const double sd_p = std::sqrt(spec.tau_psi2);
  const double cov = spec.rho * sd_t * sd_p;
  const double det = spec.tau_theta2 * spec.tau_psi2 - cov * cov;
  auto log_prior1 = [&](double th, double ps) {
    const double a = th - spec.mean_theta;
    const double b = ps - spec.mean_psi;
    const double q = (spec.tau_psi2 * a * a - 2.0 * cov * a * b + spec.tau_theta2 * b * b) / det;
    return -std::log(2.0 * std::numbers::pi) - 0.5 * std::log(det) - 0.5 * q;
  };

  constexpr double kWidth = 12.0;
  constexpr double kTol = 1e-13;
  constexpr unsigned kDepth = 20;

  const double m0 = gauss_kronrod<double, 61>::integrate(
      [&](double ps) {
        return std::exp(loglik(spec.theta0 + ps) + normal_log_density(ps, spec.mean_psi, spec.tau_psi2));
      },
      spec.mean_psi - kWidth * sd_p, spec.mean_psi + kWidth * sd_p, kDepth, kTol);

  const double m1 = gauss_kronrod<double, 61>::integrate(
      [&](double th) {
        return gauss_kronrod<double, 61>::integrate(
            [&](double ps) { return std::exp(loglik(th + ps) + log_prior1(th, ps)); },
            spec.mean_psi - kWidth * sd_p, spec.mean_psi + kWidth * sd_p, kDepth, kTol);
      },
      spec.mean_theta - kWidth * sd_t, spec.mean_theta + kWidth * sd_t, kDepth, kTol);

  return m0 / m1;
}

double discrete_brute_force_bayes_factor(const DiscreteNestedSpec& spec) {
  double m0 = 0.0;
  double m1 = 0.0;
  for (std::size_t t = 0; t < spec.theta_labels.size(); ++t) {
    for (std::size_t p = 0; p < spec.psi_labels.size(); ++p) {
      m1 += spec.likelihood[t][p] * spec.prior1[t][p];
      if (t == spec.theta0) m0 += spec.likelihood[t][p] * spec.prior0[p];
    }
  }
  return m0 / m1;
}

double sample_mean(std::span<const double> xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  const double mu = sample_mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mu) * (x - mu);
  return ss / static_cast<double>(xs.size() - 1);
}

double batch_means_std_error(std::span<const double> chain, std::size_t batches) {
  const std::size_t len = chain.size() / batches;
  if (len == 0) throw std::invalid_argument("chain shorter than batch count");
  std::vector<double> means;
  for (std::size_t b = 0; b < batches; ++b) means.push_back(sample_mean(chain.subspan(b * len, len)));
  return std::sqrt(sample_variance(means) / static_cast<double>(batches));
}

double fitted_slope(std::span<const double> x, std::span<const double> y) {
  const double mx = sample_mean(x);
  const double my = sample_mean(y);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace gsdr::oracle
