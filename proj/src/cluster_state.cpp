#include "gsdr/cluster_state.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace gsdr {

ClusterState ClusterState::single_cluster(std::size_t n, double value) {
  ClusterState out;
  out.assignments_.assign(n, 0);
  if (n > 0) {
    out.values_.push_back(value);
    out.counts_.push_back(n);
  }
  return out;
}

ClusterState ClusterState::from_values(std::span<const double> psi) {
  ClusterState out;
  out.assignments_.reserve(psi.size());
  // Keyed on the bit pattern: exact equality, with -0.0 and 0.0 kept apart.
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (double v : psi) {
    const auto key = std::bit_cast<std::uint64_t>(v);
    auto [it, inserted] = index.try_emplace(key, out.values_.size());
    if (inserted) {
      out.values_.push_back(v);
      out.counts_.push_back(0);
    }
    out.assignments_.push_back(it->second);
    ++out.counts_[it->second];
  }
  return out;
}

std::vector<double> ClusterState::expand() const {
  std::vector<double> psi;
  psi.reserve(assignments_.size());
  for (std::size_t c : assignments_) psi.push_back(values_[c]);
  return psi;
}

void ClusterState::detach(std::size_t i) {
  const std::size_t c = assignments_[i];
  if (c == kDetached) throw std::logic_error("observation already detached");
  assignments_[i] = kDetached;
  if (--counts_[c] > 0) return;

  const std::size_t last = values_.size() - 1;
  if (c != last) {
    values_[c] = values_[last];
    counts_[c] = counts_[last];
    for (auto& a : assignments_) {
      if (a == last) a = c;
    }
  }
  values_.pop_back();
  counts_.pop_back();
}

void ClusterState::attach(std::size_t i, std::size_t cluster) {
  if (assignments_[i] != kDetached) throw std::logic_error("observation is not detached");
  if (cluster >= values_.size()) throw std::out_of_range("no such cluster");
  assignments_[i] = cluster;
  ++counts_[cluster];
}

std::size_t ClusterState::attach_new(std::size_t i, double value) {
  if (assignments_[i] != kDetached) throw std::logic_error("observation is not detached");
  values_.push_back(value);
  counts_.push_back(1);
  assignments_[i] = values_.size() - 1;
  return assignments_[i];
}

void ClusterState::check_invariants() const {
  const std::size_t n = assignments_.size();
  const std::size_t d = values_.size();
  if (counts_.size() != d) throw std::logic_error("counts and values disagree in length");
  if (n > 0 && (d < 1 || d > n)) {
    throw std::logic_error("cluster count " + std::to_string(d) + " outside [1, n]");
  }
  std::vector<std::size_t> tally(d, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (assignments_[i] >= d) {
      throw std::logic_error("observation " + std::to_string(i) + " has no cluster");
    }
    ++tally[assignments_[i]];
  }
  for (std::size_t c = 0; c < d; ++c) {
    if (tally[c] == 0) throw std::logic_error("cluster " + std::to_string(c) + " is empty");
    if (tally[c] != counts_[c]) {
      throw std::logic_error("cluster " + std::to_string(c) + " count is stale");
    }
  }
}

}  // namespace gsdr
