// Partition bookkeeping for the Dirichlet-process random effects {mu_i}.

#ifndef GSDR_CLUSTER_STATE_HPP
#define GSDR_CLUSTER_STATE_HPP

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace gsdr {

/// Partition of n observations into d clusters, each carrying one distinct
/// mean. Cluster ids are always the dense range [0, d); removing a cluster
/// moves the highest id into the freed slot. Ties between observations are
/// represented by shared cluster ids, never by comparing values.
class ClusterState {
 public:
  static constexpr std::size_t kDetached = std::numeric_limits<std::size_t>::max();

  ClusterState() = default;

  /// All n observations in one cluster with the given value (empty if n == 0).
  static ClusterState single_cluster(std::size_t n, double value);

  /// Collapses a vector of means into a partition, grouping bit-identical
  /// entries. Cluster ids follow first appearance.
  static ClusterState from_values(std::span<const double> psi);

  std::size_t size() const { return assignments_.size(); }
  std::size_t num_clusters() const { return values_.size(); }

  std::size_t cluster_of(std::size_t i) const { return assignments_[i]; }
  double value(std::size_t cluster) const { return values_[cluster]; }
  std::size_t count(std::size_t cluster) const { return counts_[cluster]; }
  double mu(std::size_t i) const { return values_[assignments_[i]]; }

  const std::vector<std::size_t>& assignments() const { return assignments_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<std::size_t>& counts() const { return counts_; }

  /// psi = {mu_i}, one entry per observation.
  std::vector<double> expand() const;

  void set_value(std::size_t cluster, double value) { values_[cluster] = value; }

  // Observation i is unassigned between detach() and attach*(); the
  // invariants hold again once it is reattached.
  void detach(std::size_t i);
  void attach(std::size_t i, std::size_t cluster);
  std::size_t attach_new(std::size_t i, double value);

  /// Throws std::logic_error if the bookkeeping is inconsistent.
  void check_invariants() const;

  friend bool operator==(const ClusterState&, const ClusterState&) = default;

 private:
  std::vector<std::size_t> assignments_;
  std::vector<double> values_;
  std::vector<std::size_t> counts_;
};

}  // namespace gsdr

#endif  // GSDR_CLUSTER_STATE_HPP
