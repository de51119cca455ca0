#include "gsdr/sdr.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "gsdr/random.hpp"

namespace gsdr {

namespace {

std::string evaluation_message(const std::string& term, std::size_t index, double value) {
  std::ostringstream os;
  os << term << " evaluator returned " << value << " at draw " << index;
  return os.str();
}

std::string replicate_message(std::size_t index, const std::string& cause) {
  std::ostringstream os;
  os << "replicate " << index << " failed: " << cause;
  return os.str();
}

}  // namespace

EvaluationError::EvaluationError(const std::string& term, std::size_t draw_index, double value)
    : std::runtime_error(evaluation_message(term, draw_index, value)),
      draw_index_(draw_index),
      value_(value) {}

ReplicateError::ReplicateError(std::size_t replicate_index, const std::string& cause)
    : std::runtime_error(replicate_message(replicate_index, cause)),
      replicate_index_(replicate_index) {}

TermAccumulator::TermAccumulator(std::string term, EstimatorOptions options, std::size_t reserve)
    : term_(std::move(term)), options_(options) {
  values_.reserve(reserve);
}

void TermAccumulator::add(double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw EvaluationError(term_, values_.size(), value);
  }
  values_.push_back(options_.log_space ? std::log(value) : value);
}

TermEstimate TermAccumulator::finish() const {
  const std::size_t n = values_.size();
  if (n == 0) throw std::logic_error("no draws accumulated for " + term_ + " term");
  TermEstimate out;
  out.n_draws = n;
  const double count = static_cast<double>(n);

  if (!options_.log_space) {
    out.mean = std::accumulate(values_.begin(), values_.end(), 0.0) / count;
    if (n > 1) {
      double ss = 0.0;
      for (double v : values_) ss += (v - out.mean) * (v - out.mean);
      out.std_error = std::sqrt(ss / (count - 1.0) / count);
    }
    return out;
  }

  // Values hold logs; shift by the max so the largest output becomes 1.
  const double shift = *std::max_element(values_.begin(), values_.end());
  if (shift == -std::numeric_limits<double>::infinity()) return out;
  double sum = 0.0;
  for (double l : values_) sum += std::exp(l - shift);
  const double scaled_mean = sum / count;
  out.mean = std::exp(std::log(scaled_mean) + shift);
  if (n > 1) {
    double ss = 0.0;
    for (double l : values_) {
      const double dev = std::exp(l - shift) - scaled_mean;
      ss += dev * dev;
    }
    out.std_error = std::exp(0.5 * std::log(ss / (count - 1.0) / count) + shift);
  }
  return out;
}

BayesFactorEstimate combine_terms(const TermEstimate& left, const TermEstimate& right) {
  return BayesFactorEstimate{left, right, left.mean * right.mean};
}

std::vector<ReplicateSeeds> replicate_seeds(std::uint64_t root_seed, std::size_t count) {
  std::vector<ReplicateSeeds> out;
  out.reserve(count);
  std::set<std::uint64_t> used;
  std::uint64_t stream = 0;
  // Skip the (astronomically unlikely) collisions so distinctness is a guarantee.
  auto next = [&] {
    for (;;) {
      const std::uint64_t s = derive_seed(root_seed, stream++);
      if (used.insert(s).second) return s;
    }
  };
  for (std::size_t r = 0; r < count; ++r) {
    ReplicateSeeds seeds;
    seeds.problem = next();
    seeds.left = next();
    seeds.right = next();
    out.push_back(seeds);
  }
  return out;
}

ReplicateSummary summarize(std::vector<BayesFactorEstimate> estimates) {
  ReplicateSummary out;
  out.estimates = std::move(estimates);
  const std::size_t r = out.estimates.size();
  if (r == 0) return out;
  double sum = 0.0;
  for (const auto& e : out.estimates) sum += e.b01;
  out.mean_b01 = sum / static_cast<double>(r);
  if (r > 1) {
    double ss = 0.0;
    for (const auto& e : out.estimates) ss += (e.b01 - out.mean_b01) * (e.b01 - out.mean_b01);
    out.sd_b01 = std::sqrt(ss / static_cast<double>(r - 1));
    out.sd_available = true;
  }
  return out;
}

void run_indexed(std::size_t count, unsigned threads,
                 const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));

  std::vector<std::exception_ptr> failures(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (std::size_t i = 0; i < count; ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const std::exception& e) {
      throw ReplicateError(i, e.what());
    } catch (...) {
      throw ReplicateError(i, "unknown exception");
    }
  }
}

}  // namespace gsdr
