#include "circlelink/similarity.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "circlelink/errors.hpp"

namespace circlelink {

const char* to_string(SimilarityKind k) {
  switch (k) {
    case SimilarityKind::CommonNeighbors: return "CN";
    case SimilarityKind::Jaccard: return "JC";
    case SimilarityKind::AdamicAdar: return "AA";
    case SimilarityKind::ResourceAllocation: return "RA";
  }
  return "CN";
}

SimilarityKind similarity_kind_from_string(std::string_view s) {
  if (s == "CN" || s == "cn") return SimilarityKind::CommonNeighbors;
  if (s == "JC" || s == "jc") return SimilarityKind::Jaccard;
  if (s == "AA" || s == "aa") return SimilarityKind::AdamicAdar;
  if (s == "RA" || s == "ra") return SimilarityKind::ResourceAllocation;
  throw ParseError("unknown similarity kind '" + std::string(s) + "'");
}

namespace {

struct PairView {
  std::span<const NodeId> a;
  std::span<const NodeId> b;
};

PairView neighborhoods(const SlicedView& v, NodeId i, NodeId j) {
  if (i == j)
    throw SameNode("similarity of node " + std::to_string(i) + " with itself");
  return {v.out_neighbors(i), v.out_neighbors(j)};
}

// Walks the sorted intersection in ascending id order (regardless of the
// order of i and j, which keeps floating-point sums symmetric) and feeds each
// shared neighbour to `fn`.
template <typename Fn>
void for_each_common(const PairView& nb, Fn&& fn) {
  auto ia = nb.a.begin();
  auto ib = nb.b.begin();
  while (ia != nb.a.end() && ib != nb.b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      fn(*ia);
      ++ia;
      ++ib;
    }
  }
}

std::size_t intersection_size(const PairView& nb) {
  std::size_t n = 0;
  for_each_common(nb, [&](NodeId) { ++n; });
  return n;
}

std::size_t penal_degree(const SlicedView& v, NodeId z,
                         const SimilarityOptions& opts) {
  if (!opts.domain_restricted_degree) {
    std::size_t d = v.base_degree(z);
    // a shared neighbour of two distinct nodes always has base degree >= 2
    assert(d >= 2);
    return d;
  }
  // The restricted count can drop below 2 when the dataset leaves egos
  // unclassed; clamp so log/divide stay defined (maximum penalization).
  return std::max<std::size_t>(v.domain_degree(z), 2);
}

}  // namespace

double common_neighbors(const SlicedView& v, NodeId i, NodeId j) {
  return static_cast<double>(intersection_size(neighborhoods(v, i, j)));
}

double jaccard(const SlicedView& v, NodeId i, NodeId j) {
  auto nb = neighborhoods(v, i, j);
  std::size_t inter = intersection_size(nb);
  std::size_t uni = nb.a.size() + nb.b.size() - inter;
  if (uni == 0) return 0.0;  // both neighbourhoods empty
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double adamic_adar(const SlicedView& v, NodeId i, NodeId j,
                   const SimilarityOptions& opts) {
  auto nb = neighborhoods(v, i, j);
  // log_base rescales: log_base(d) = ln(d) / ln(base)
  double scale = opts.log_base > 0.0 ? std::log(opts.log_base) : 1.0;
  double sum = 0.0;
  for_each_common(nb, [&](NodeId z) {
    double d = static_cast<double>(penal_degree(v, z, opts));
    sum += scale / std::log(d);
  });
  return sum;
}

double resource_allocation(const SlicedView& v, NodeId i, NodeId j,
                           const SimilarityOptions& opts) {
  auto nb = neighborhoods(v, i, j);
  double sum = 0.0;
  for_each_common(nb, [&](NodeId z) {
    sum += 1.0 / static_cast<double>(penal_degree(v, z, opts));
  });
  return sum;
}

double score_value(const SlicedView& v, SimilarityKind kind, NodeId i, NodeId j,
                   const SimilarityOptions& opts) {
  switch (kind) {
    case SimilarityKind::CommonNeighbors: return common_neighbors(v, i, j);
    case SimilarityKind::Jaccard: return jaccard(v, i, j);
    case SimilarityKind::AdamicAdar: return adamic_adar(v, i, j, opts);
    case SimilarityKind::ResourceAllocation:
      return resource_allocation(v, i, j, opts);
  }
  return 0.0;
}

SimilarityScore score(const SlicedView& v, SimilarityKind kind, NodeId i,
                      NodeId j, const SimilarityOptions& opts) {
  return {kind, score_value(v, kind, i, j, opts), v.spec()};
}

std::array<double, 4> feature_vector(const SlicedView& v, NodeId i, NodeId j,
                                     const SimilarityOptions& opts) {
  auto nb = neighborhoods(v, i, j);
  double scale = opts.log_base > 0.0 ? std::log(opts.log_base) : 1.0;
  std::size_t inter = 0;
  double aa = 0.0, ra = 0.0;
  for_each_common(nb, [&](NodeId z) {
    ++inter;
    double d = static_cast<double>(penal_degree(v, z, opts));
    aa += scale / std::log(d);
    ra += 1.0 / d;
  });
  std::size_t uni = nb.a.size() + nb.b.size() - inter;
  double jc = uni == 0 ? 0.0
                       : static_cast<double>(inter) / static_cast<double>(uni);
  return {static_cast<double>(inter), jc, aa, ra};
}

}  // namespace circlelink
