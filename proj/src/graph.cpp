#include "circlelink/graph.hpp"

#include <algorithm>
#include <tuple>

#include "circlelink/errors.hpp"

namespace circlelink {

const char* to_string(NodeClass c) {
  switch (c) {
    case NodeClass::Ego: return "ego";
    case NodeClass::DomainSpecific: return "domain";
    case NodeClass::Generic: return "generic";
  }
  return "generic";
}

NodeClass node_class_from_string(std::string_view s) {
  if (s == "ego") return NodeClass::Ego;
  if (s == "domain") return NodeClass::DomainSpecific;
  if (s == "generic") return NodeClass::Generic;
  throw ParseError("unknown node class '" + std::string(s) + "'");
}

void InteractionGraph::check(NodeId id) const {
  if (id >= labels_.size())
    throw UnknownNode("node id " + std::to_string(id) + " out of range");
}

const std::string& InteractionGraph::label(NodeId id) const {
  check(id);
  return labels_[id];
}

NodeClass InteractionGraph::node_class(NodeId id) const {
  check(id);
  return classes_[id];
}

std::optional<NodeId> InteractionGraph::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const NodeId> InteractionGraph::neighbors(NodeId id) const {
  check(id);
  return {adj_.data() + offsets_[id], offsets_[id + 1] - offsets_[id]};
}

std::span<const double> InteractionGraph::neighbor_weights(NodeId id) const {
  check(id);
  return {weights_.data() + offsets_[id], offsets_[id + 1] - offsets_[id]};
}

std::optional<double> InteractionGraph::edge_weight(NodeId i, NodeId j) const {
  auto nbrs = neighbors(i);
  check(j);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), j);
  if (it == nbrs.end() || *it != j) return std::nullopt;
  return neighbor_weights(i)[static_cast<std::size_t>(it - nbrs.begin())];
}

std::vector<NodeId> InteractionGraph::nodes_of_class(NodeClass c) const {
  std::vector<NodeId> out;
  for (NodeId id = 0; id < labels_.size(); ++id)
    if (classes_[id] == c) out.push_back(id);
  return out;
}

InteractionGraph build_graph(const std::vector<WeightedEdge>& edges,
                             const std::map<std::string, NodeClass>& classes,
                             std::vector<std::string>* warnings) {
  InteractionGraph g;

  // Node universe: every label seen in an edge or in the class map, interned
  // in sorted order so the result is independent of row order.
  std::vector<std::string> labels;
  labels.reserve(edges.size() * 2 + classes.size());
  for (const auto& e : edges) {
    if (e.src == e.dst)
      throw SelfLoop("self-loop on '" + e.src + "'");
    if (e.weight < 0.0)
      throw NegativeWeight("negative weight on (" + e.src + ", " + e.dst + ")");
    labels.push_back(e.src);
    labels.push_back(e.dst);
  }
  for (const auto& [label, cls] : classes) {
    (void)cls;
    labels.push_back(label);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  g.labels_ = std::move(labels);
  g.index_.reserve(g.labels_.size());
  for (NodeId id = 0; id < g.labels_.size(); ++id) g.index_[g.labels_[id]] = id;

  g.classes_.resize(g.labels_.size(), NodeClass::Generic);
  for (const auto& [label, cls] : classes) g.classes_[g.index_[label]] = cls;
  if (warnings) {
    for (NodeId id = 0; id < g.labels_.size(); ++id)
      if (!classes.count(g.labels_[id]))
        warnings->push_back("node '" + g.labels_[id] +
                            "' has no class entry; defaulting to generic");
  }

  // Canonicalize to (min, max), merge duplicates by summing weights.
  std::vector<std::tuple<NodeId, NodeId, double>> canon;
  canon.reserve(edges.size());
  for (const auto& e : edges) {
    NodeId a = g.index_[e.src];
    NodeId b = g.index_[e.dst];
    if (a > b) std::swap(a, b);
    canon.emplace_back(a, b, e.weight);
  }
  std::sort(canon.begin(), canon.end(),
            [](const auto& x, const auto& y) {
              return std::make_pair(std::get<0>(x), std::get<1>(x)) <
                     std::make_pair(std::get<0>(y), std::get<1>(y));
            });
  std::vector<std::tuple<NodeId, NodeId, double>> merged;
  merged.reserve(canon.size());
  for (const auto& t : canon) {
    if (!merged.empty() && std::get<0>(merged.back()) == std::get<0>(t) &&
        std::get<1>(merged.back()) == std::get<1>(t))
      std::get<2>(merged.back()) += std::get<2>(t);
    else
      merged.push_back(t);
  }
  g.edge_count_ = merged.size();

  // CSR, symmetric.
  std::vector<std::size_t> deg(g.labels_.size(), 0);
  for (const auto& [a, b, w] : merged) {
    (void)w;
    ++deg[a];
    ++deg[b];
  }
  g.offsets_.assign(g.labels_.size() + 1, 0);
  for (std::size_t i = 0; i < deg.size(); ++i)
    g.offsets_[i + 1] = g.offsets_[i] + deg[i];
  g.adj_.resize(g.offsets_.back());
  g.weights_.resize(g.offsets_.back());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [a, b, w] : merged) {
    g.adj_[cursor[a]] = b;
    g.weights_[cursor[a]++] = w;
    g.adj_[cursor[b]] = a;
    g.weights_[cursor[b]++] = w;
  }
  // merged is sorted by (a, b), so each node's "a-side" entries are already
  // ascending; the "b-side" entries interleave and need a per-node sort.
  for (NodeId id = 0; id < g.labels_.size(); ++id) {
    auto begin = g.offsets_[id], end = g.offsets_[id + 1];
    std::vector<std::pair<NodeId, double>> row;
    row.reserve(end - begin);
    for (std::size_t k = begin; k < end; ++k)
      row.emplace_back(g.adj_[k], g.weights_[k]);
    std::sort(row.begin(), row.end());
    for (std::size_t k = begin; k < end; ++k) {
      g.adj_[k] = row[k - begin].first;
      g.weights_[k] = row[k - begin].second;
    }
  }
  return g;
}

}  // namespace circlelink
