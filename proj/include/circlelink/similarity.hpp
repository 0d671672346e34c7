#pragma once

#include <array>
#include <string_view>

#include "circlelink/slicing.hpp"

namespace circlelink {

enum class SimilarityKind : std::uint8_t {
  CommonNeighbors,
  Jaccard,
  AdamicAdar,
  ResourceAllocation,
};

const char* to_string(SimilarityKind k);   // "CN", "JC", "AA", "RA"
SimilarityKind similarity_kind_from_string(std::string_view s);

struct SimilarityOptions {
  /// Logarithm base for Adamic–Adar; 0 means natural log (the default).
  double log_base = 0.0;
  /// When set, the penalization denominators count only ego/domain-specific
  /// neighbours instead of the full base degree.  Sensitivity knob, off by
  /// default.
  bool domain_restricted_degree = false;
};

/// A score together with the context it was computed under.
struct SimilarityScore {
  SimilarityKind kind;
  double value;
  SliceSpec spec;
};

/// All four heuristics score an unordered ego pair over sliced
/// out-neighbourhoods; the penalized variants (AA, RA) divide by the
/// *unsliced* base-graph degree of each shared neighbour.  Every function
/// throws SameNode when i == j and MissingEgoNetwork when either endpoint has
/// no ego network in the view.  Scores are symmetric in (i, j), finite and
/// >= 0.

double common_neighbors(const SlicedView& v, NodeId i, NodeId j);
/// |intersection| / |union|; defined as 0 when both sliced neighbourhoods are
/// empty.
double jaccard(const SlicedView& v, NodeId i, NodeId j);
double adamic_adar(const SlicedView& v, NodeId i, NodeId j,
                   const SimilarityOptions& opts = {});
double resource_allocation(const SlicedView& v, NodeId i, NodeId j,
                           const SimilarityOptions& opts = {});

double score_value(const SlicedView& v, SimilarityKind kind, NodeId i, NodeId j,
                   const SimilarityOptions& opts = {});
SimilarityScore score(const SlicedView& v, SimilarityKind kind, NodeId i,
                      NodeId j, const SimilarityOptions& opts = {});

/// (CN, JC, AA, RA) in that order; the supervised feature layout.
std::array<double, 4> feature_vector(const SlicedView& v, NodeId i, NodeId j,
                                     const SimilarityOptions& opts = {});

}  // namespace circlelink
