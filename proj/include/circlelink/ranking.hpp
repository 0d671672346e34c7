#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "circlelink/evalstats.hpp"
#include "circlelink/similarity.hpp"

namespace circlelink {

/// Unordered ego pair stored canonically as (min, max).
using Pair = std::pair<NodeId, NodeId>;

inline Pair canonical_pair(NodeId a, NodeId b) {
  return a < b ? Pair{a, b} : Pair{b, a};
}

/// Two points in time of the same graph: e_old are the ego-ego edges present
/// at T0, e_new the ego-ego edges that appeared by T1.  Both canonical,
/// sorted, duplicate-free and disjoint.
struct SnapshotPair {
  std::vector<Pair> e_old;
  std::vector<Pair> e_new;
};

/// Canonicalizes, sorts and dedupes both sets; throws MismatchedEgoSets when
/// they overlap.
SnapshotPair make_snapshot_pair(std::vector<Pair> e_old, std::vector<Pair> e_new);

struct ScoredPair {
  Pair pair;
  double score;
};

/// Top-K predicted links.  Entries are sorted by score descending with ties
/// broken by ascending canonical pair, so the list is a total order and the
/// result is reproducible no matter how candidates were enumerated.
struct RankedPredictions {
  SliceSpec spec;
  SimilarityKind kind;
  std::size_t k = 0;        // requested K
  std::size_t n_egos = 0;   // ego count of the view at ranking time
  bool truncated = false;   // pool had fewer than k candidates
  std::vector<ScoredPair> entries;
};

/// Scores every unordered ego pair not in e_old and keeps the best k (pairs
/// with zero score fill up the tail in canonical order, exactly as the tie
/// rule implies).  Throws EmptyCandidatePool when no candidate exists;
/// k must be >= 1.
RankedPredictions rank_candidates(const SlicedView& v, SimilarityKind kind,
                                  const SnapshotPair& snapshots, std::size_t k,
                                  const SimilarityOptions& opts = {});

/// Confusion of a prediction list L against e_new over the candidate pool of
/// n_egos egos: TP = |L and e_new|, FP = |L - e_new|, FN = |e_new - L|,
/// TN = pool - |L or e_new| with pool = n_egos (n_egos - 1)/2 - |e_old|.
/// Throws MismatchedEgoSets when preds was ranked over a different ego count.
Confusion confusion(const RankedPredictions& preds, const SnapshotPair& snapshots,
                    std::size_t n_egos);

struct PrCurve {
  /// (recall, precision) swept over distinct scores descending, recall
  /// ascending; first point is (0, precision at the smallest positive
  /// recall).
  std::vector<std::pair<double, double>> points;
  double auc = 0.0;  // trapezoid over recall
};

/// Precision-recall curve over every candidate score.  Throws NoPositives
/// when e_new is empty, EmptyCandidatePool when there are no candidates.
PrCurve pr_curve_auc(const SlicedView& v, SimilarityKind kind,
                     const SnapshotPair& snapshots,
                     const SimilarityOptions& opts = {});

}  // namespace circlelink
