#pragma once

// Shared fixtures for the test suite: small deterministic instances plus a
// random-instance generator that is intentionally unrelated to the library's
// synthetic data module.

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "circlelink/egonet.hpp"
#include "circlelink/graph.hpp"
#include "circlelink/ranking.hpp"
#include "circlelink/rng.hpp"
#include "circlelink/slicing.hpp"

namespace cltest {

using namespace circlelink;

struct Instance {
  InteractionGraph graph;
  std::map<NodeId, EgoNetwork> nets;
  SnapshotPair snaps;
  std::vector<NodeId> egos;  // ascending, all with ego networks
};

/// Random classed graph where every ego keeps at least one active alter, all
/// present ego-ego edges form e_old, and e_new is a random set of absent ego
/// pairs.
inline Instance random_instance(Rng& rng, int max_egos = 12,
                                int max_extras = 15) {
  const int n_egos = 2 + static_cast<int>(rng.uniform_index(max_egos - 1));
  const int n_extras = static_cast<int>(rng.uniform_index(max_extras + 1));
  std::vector<std::string> names;
  std::map<std::string, NodeClass> classes;
  for (int i = 0; i < n_egos; ++i) {
    names.push_back("e" + std::to_string(100 + i));
    classes[names.back()] = NodeClass::Ego;
  }
  for (int i = 0; i < n_extras; ++i) {
    names.push_back("x" + std::to_string(100 + i));
    classes[names.back()] = rng.uniform01() < 0.4 ? NodeClass::DomainSpecific
                                                  : NodeClass::Generic;
  }

  std::set<std::pair<std::string, std::string>> used;
  std::vector<WeightedEdge> edges;
  auto add_edge = [&](const std::string& a, const std::string& b, double w) {
    if (a == b) return;
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    if (!used.insert(key).second) return;
    edges.push_back({a, b, w});
  };
  for (int i = 0; i < n_egos; ++i) {
    const int fan = 1 + static_cast<int>(rng.uniform_index(10));
    for (int k = 0; k < fan; ++k) {
      const auto& other = names[rng.uniform_index(names.size())];
      // first draw per ego is forced active so the ego keeps a network
      double w = k == 0 ? rng.uniform(1.0, 150.0)
                        : std::exp(rng.uniform(-1.5, 5.0));
      add_edge(names[i], other, w);
    }
  }
  if (edges.empty()) edges.push_back({names[0], names[1], 2.0});

  Instance inst{build_graph(edges, classes, nullptr), {}, {}, {}};
  std::vector<NodeId> filtered;
  inst.nets = ego_networks_from_graph(
      inst.graph, inst.graph.nodes_of_class(NodeClass::Ego), {}, &filtered);
  for (const auto& [id, net] : inst.nets) {
    (void)net;
    inst.egos.push_back(id);
  }

  std::vector<Pair> e_old, e_new;
  auto is_ego = [&](NodeId id) {
    return std::binary_search(inst.egos.begin(), inst.egos.end(), id);
  };
  for (NodeId i : inst.egos)
    for (NodeId nb : inst.graph.neighbors(i))
      if (nb > i && is_ego(nb)) e_old.push_back({i, nb});
  for (std::size_t a = 0; a < inst.egos.size(); ++a)
    for (std::size_t b = a + 1; b < inst.egos.size(); ++b) {
      Pair p{inst.egos[a], inst.egos[b]};
      if (!inst.graph.edge_weight(p.first, p.second) && rng.uniform01() < 0.25)
        e_new.push_back(p);
    }
  inst.snaps = make_snapshot_pair(std::move(e_old), std::move(e_new));
  return inst;
}

/// Fixed 3-ego fixture with hand-placed circles.
///
///   ern: alters a (90/yr) and b (85/yr) inner; c (8/yr) outer; d (0.5/yr)
///        acquaintance; linked to ego fay at 88/yr
///   fay: ern (88), a (92) inner; m (7) outer
///   gil: b (80) inner only
///   classes: a, m domain-specific; b, c, d generic
inline Instance fixture() {
  std::vector<WeightedEdge> edges = {
      {"ern", "a", 90}, {"ern", "b", 85}, {"ern", "c", 8},  {"ern", "d", 0.5},
      {"ern", "fay", 88}, {"fay", "a", 92}, {"fay", "m", 7}, {"gil", "b", 80}};
  std::map<std::string, NodeClass> classes = {
      {"ern", NodeClass::Ego},        {"fay", NodeClass::Ego},
      {"gil", NodeClass::Ego},        {"a", NodeClass::DomainSpecific},
      {"m", NodeClass::DomainSpecific}, {"b", NodeClass::Generic},
      {"c", NodeClass::Generic},      {"d", NodeClass::Generic}};
  Instance inst{build_graph(edges, classes, nullptr), {}, {}, {}};
  inst.nets = ego_networks_from_graph(
      inst.graph, inst.graph.nodes_of_class(NodeClass::Ego), {}, nullptr);
  for (const auto& [id, net] : inst.nets) {
    (void)net;
    inst.egos.push_back(id);
  }
  std::vector<Pair> e_old = {
      {canonical_pair(*inst.graph.find("ern"), *inst.graph.find("fay"))}};
  std::vector<Pair> e_new = {
      {canonical_pair(*inst.graph.find("ern"), *inst.graph.find("gil"))}};
  inst.snaps = make_snapshot_pair(e_old, e_new);
  return inst;
}

inline NodeId id_of(const Instance& inst, const char* label) {
  return *inst.graph.find(label);
}

}  // namespace cltest
