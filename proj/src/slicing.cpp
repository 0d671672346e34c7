#include "circlelink/slicing.hpp"

#include <algorithm>

#include "circlelink/errors.hpp"

namespace circlelink {

std::string to_string(const SliceSpec& spec) {
  std::string s = to_string(spec.level);
  if (spec.domain_only) s += ":domain";
  return s;
}

SliceSpec slice_spec_from_string(std::string_view s) {
  SliceSpec spec;
  auto colon = s.find(':');
  if (colon != std::string_view::npos) {
    std::string_view suffix = s.substr(colon + 1);
    if (suffix != "domain")
      throw ParseError("unknown slice suffix '" + std::string(suffix) + "'");
    spec.domain_only = true;
    s = s.substr(0, colon);
  }
  spec.level = circle_level_from_string(s);
  return spec;
}

SlicedView::SlicedView(const InteractionGraph& g,
                       const std::map<NodeId, EgoNetwork>& egos, SliceSpec spec)
    : graph_(&g), egos_(&egos), spec_(spec) {
  ego_ids_.reserve(egos.size());
  for (const auto& [id, net] : egos) {
    (void)net;
    ego_ids_.push_back(id);
  }
  cache_.resize(ego_ids_.size());
  filled_.reserve(ego_ids_.size());
  for (std::size_t i = 0; i < ego_ids_.size(); ++i)
    filled_.push_back(std::make_unique<std::once_flag>());
}

bool SlicedView::is_ego(NodeId id) const { return egos_->count(id) > 0; }

std::size_t SlicedView::ego_index(NodeId ego) const {
  auto it = std::lower_bound(ego_ids_.begin(), ego_ids_.end(), ego);
  if (it == ego_ids_.end() || *it != ego)
    throw MissingEgoNetwork("no ego network for node " + std::to_string(ego));
  return static_cast<std::size_t>(it - ego_ids_.begin());
}

std::span<const NodeId> SlicedView::out_neighbors(NodeId ego) const {
  std::size_t idx = ego_index(ego);
  std::call_once(*filled_[idx], [&] {
    const EgoNetwork& net = egos_->at(ego);
    const std::vector<NodeId>& members = net.circle_members(spec_.level);
    auto nbrs = graph_->neighbors(ego);
    std::vector<NodeId> out;
    out.reserve(std::min(members.size(), nbrs.size()));
    std::set_intersection(members.begin(), members.end(), nbrs.begin(),
                          nbrs.end(), std::back_inserter(out));
    if (spec_.domain_only) {
      std::erase_if(out, [&](NodeId z) {
        NodeClass c = graph_->node_class(z);
        return c != NodeClass::Ego && c != NodeClass::DomainSpecific;
      });
    }
    cache_[idx] = std::move(out);
  });
  return cache_[idx];
}

std::size_t SlicedView::domain_degree(NodeId z) const {
  std::size_t d = 0;
  for (NodeId nb : graph_->neighbors(z)) {
    NodeClass c = graph_->node_class(nb);
    if (c == NodeClass::Ego || c == NodeClass::DomainSpecific) ++d;
  }
  return d;
}

SlicedView slice(const InteractionGraph& g,
                 const std::map<NodeId, EgoNetwork>& egos, SliceSpec spec) {
  return SlicedView(g, egos, spec);
}

}  // namespace circlelink
