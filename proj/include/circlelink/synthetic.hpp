#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "circlelink/graph.hpp"

namespace circlelink {

/// Planted-circle generator.  Egos are grouped into communities; each ego
/// draws its two innermost rings from small per-community alter pools (so
/// same-community egos share inner-circle alters) and its outer rings from a
/// global pool (so *every* ego pair shares background neighbours).  Links —
/// both the existing e_old edges and the injected e_new edges — appear only
/// inside communities, which plants the "shared inner circle => link" signal
/// the circle-aware heuristics are supposed to pick up.
struct SyntheticSpec {
  int n_egos = 48;
  int community_size = 6;
  /// cumulative circle sizes, strictly increasing
  std::vector<int> circle_sizes = {2, 5, 15, 50};
  /// mean contact frequency per ring, strictly decreasing (default is a
  /// ratio-3 ladder)
  std::vector<double> circle_means = {48.0, 16.0, 5.3, 1.8};
  /// absolute uniform jitter applied to each alter's ring mean
  double freq_jitter = 0.1;
  int inner_pool = 3;     // ring-1 pool per community
  int mid_pool = 6;       // ring-2 pool per community
  int outer_pool = 120;   // shared pool for the remaining rings
  double p_link_within = 0.5;   // e_old edge prob inside a community
  double p_new_within = 0.4;    // e_new prob among remaining inside pairs
  /// fraction of pool alters classed domain-specific instead of generic
  double domain_fraction = 0.0;
  std::uint64_t seed = 1;
};

struct SyntheticData {
  std::vector<WeightedEdge> edges;
  std::map<std::string, NodeClass> classes;
  std::vector<std::pair<std::string, std::string>> new_edges;
  /// ground truth: per ego, per ring (innermost first), the planted alter
  /// labels; linked egos appear in ring 0 of each other
  std::map<std::string, std::vector<std::vector<std::string>>> truth_rings;
};

/// Throws InfeasibleSpec when sizes/means are not monotone, rings overlap
/// after jitter, or a ring is larger than its pool.
SyntheticData generate_synthetic(const SyntheticSpec& spec);

}  // namespace circlelink
