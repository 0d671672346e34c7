#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace circlelink {

/// Dense node index after label interning.  Ids are assigned in sorted label
/// order, so the same input multiset always yields the same graph no matter
/// how the rows were ordered.
using NodeId = std::uint32_t;

enum class NodeClass : std::uint8_t { Ego, DomainSpecific, Generic };

const char* to_string(NodeClass c);
NodeClass node_class_from_string(std::string_view s);  // "ego"/"domain"/"generic"

struct WeightedEdge {
  std::string src;
  std::string dst;
  double weight = 0.0;
};

/// Undirected interaction-weighted graph.  Immutable once built; adjacency is
/// CSR with per-node neighbour lists sorted ascending (cache-friendly scans,
/// and a sorted list doubles as a set for the merge-based set operations).
class InteractionGraph {
 public:
  std::size_t node_count() const { return labels_.size(); }
  /// Number of undirected edges.
  std::size_t edge_count() const { return edge_count_; }

  /// Throws UnknownNode when the id is out of range.
  const std::string& label(NodeId id) const;
  NodeClass node_class(NodeId id) const;
  std::optional<NodeId> find(std::string_view label) const;

  /// Sorted, duplicate-free neighbour ids; the neighbourhood as a set.
  std::span<const NodeId> neighbors(NodeId id) const;
  /// Weights parallel to neighbors(id).
  std::span<const double> neighbor_weights(NodeId id) const;
  std::size_t degree(NodeId id) const { return neighbors(id).size(); }

  /// Edge weight, or nullopt when (i, j) is not an edge.
  std::optional<double> edge_weight(NodeId i, NodeId j) const;

  /// Ids of all nodes with the given class, ascending.
  std::vector<NodeId> nodes_of_class(NodeClass c) const;

  friend InteractionGraph build_graph(const std::vector<WeightedEdge>&,
                                      const std::map<std::string, NodeClass>&,
                                      std::vector<std::string>*);

 private:
  void check(NodeId id) const;

  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<NodeClass> classes_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adj_;
  std::vector<double> weights_;
  std::size_t edge_count_ = 0;
};

/// Builds the graph from raw weighted rows plus a label -> class map.
///
/// * parallel rows for the same unordered pair merge by summing weights
///   (a,b,1.0 and b,a,1.0 are the same edge and merge to weight 2.0);
/// * self-loops throw SelfLoop, negative weights throw NegativeWeight;
/// * labels missing from `classes` default to Generic; each default is
///   reported through `warnings` when non-null;
/// * labels present only in `classes` become isolated nodes.
InteractionGraph build_graph(const std::vector<WeightedEdge>& edges,
                             const std::map<std::string, NodeClass>& classes,
                             std::vector<std::string>* warnings = nullptr);

}  // namespace circlelink
