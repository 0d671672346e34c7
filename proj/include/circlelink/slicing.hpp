#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "circlelink/egonet.hpp"
#include "circlelink/graph.hpp"

namespace circlelink {

/// Which part of each ego network survives, and whether the neighbourhood is
/// further restricted to ego + domain-specific nodes.
struct SliceSpec {
  CircleLevel level = CircleLevel::All;
  bool domain_only = false;

  bool operator==(const SliceSpec&) const = default;
};

std::string to_string(const SliceSpec& spec);          // "C1", "C2:domain", ...
SliceSpec slice_spec_from_string(std::string_view s);

/// Directed view of the base graph induced by a slice.  Out-neighbourhoods
/// exist for egos only: out(i) = circle members of i at the slice level,
/// intersected with the base neighbourhood (and with ego/domain nodes when
/// domain_only).  The per-ego lists are computed lazily and cached; the fill
/// is guarded per ego, so concurrent readers are safe.
class SlicedView {
 public:
  SlicedView(const InteractionGraph& g, const std::map<NodeId, EgoNetwork>& egos,
             SliceSpec spec);

  const InteractionGraph& graph() const { return *graph_; }
  const SliceSpec& spec() const { return spec_; }

  bool is_ego(NodeId id) const;
  /// All ego ids in the view, ascending.
  const std::vector<NodeId>& ego_ids() const { return ego_ids_; }
  std::size_t ego_count() const { return ego_ids_.size(); }

  /// Sorted out-neighbour ids of an ego; throws MissingEgoNetwork for any
  /// node without an ego network in this view.
  std::span<const NodeId> out_neighbors(NodeId ego) const;

  /// Degree of z in the full base graph (the penalization denominator).
  std::size_t base_degree(NodeId z) const { return graph_->degree(z); }
  /// Degree of z counting only ego/domain-specific neighbours; the optional
  /// sensitivity knob for penalized heuristics under domain slicing.
  std::size_t domain_degree(NodeId z) const;

 private:
  std::size_t ego_index(NodeId ego) const;

  const InteractionGraph* graph_;
  const std::map<NodeId, EgoNetwork>* egos_;
  SliceSpec spec_;
  std::vector<NodeId> ego_ids_;
  mutable std::vector<std::vector<NodeId>> cache_;
  mutable std::vector<std::unique_ptr<std::once_flag>> filled_;
};

/// Convenience factory mirroring the module operation name.
SlicedView slice(const InteractionGraph& g,
                 const std::map<NodeId, EgoNetwork>& egos, SliceSpec spec);

}  // namespace circlelink
