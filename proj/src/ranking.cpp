#include "circlelink/ranking.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <unordered_set>

#include "circlelink/errors.hpp"

namespace circlelink {

namespace {

inline std::uint64_t pack(const Pair& p) {
  return (static_cast<std::uint64_t>(p.first) << 32) | p.second;
}

void canonicalize(std::vector<Pair>& pairs) {
  for (auto& p : pairs)
    if (p.first > p.second) std::swap(p.first, p.second);
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
}

// score descending, then canonical pair ascending: a strict total order
inline bool better(const ScoredPair& a, const ScoredPair& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.pair < b.pair;
}

}  // namespace

SnapshotPair make_snapshot_pair(std::vector<Pair> e_old, std::vector<Pair> e_new) {
  canonicalize(e_old);
  canonicalize(e_new);
  std::vector<Pair> overlap;
  std::set_intersection(e_old.begin(), e_old.end(), e_new.begin(), e_new.end(),
                        std::back_inserter(overlap));
  if (!overlap.empty())
    throw MismatchedEgoSets("e_old and e_new share " +
                            std::to_string(overlap.size()) + " pair(s)");
  return {std::move(e_old), std::move(e_new)};
}

RankedPredictions rank_candidates(const SlicedView& v, SimilarityKind kind,
                                  const SnapshotPair& snapshots, std::size_t k,
                                  const SimilarityOptions& opts) {
  if (k == 0) throw std::invalid_argument("rank_candidates requires k >= 1");
  const auto& egos = v.ego_ids();
  std::unordered_set<std::uint64_t> old_edges;
  old_edges.reserve(snapshots.e_old.size() * 2);
  for (const auto& p : snapshots.e_old) old_edges.insert(pack(p));

  // bounded selection: a min-heap (by the ranking order) of the current best k
  auto worse = [](const ScoredPair& a, const ScoredPair& b) {
    return better(a, b);  // priority_queue keeps the *worst* kept entry on top
  };
  std::priority_queue<ScoredPair, std::vector<ScoredPair>, decltype(worse)>
      heap(worse);

  std::size_t pool = 0;
  for (std::size_t a = 0; a < egos.size(); ++a) {
    for (std::size_t b = a + 1; b < egos.size(); ++b) {
      Pair p{egos[a], egos[b]};
      if (old_edges.count(pack(p))) continue;
      ++pool;
      ScoredPair sp{p, score_value(v, kind, p.first, p.second, opts)};
      if (heap.size() < k) {
        heap.push(sp);
      } else if (better(sp, heap.top())) {
        heap.pop();
        heap.push(sp);
      }
    }
  }
  if (pool == 0) throw EmptyCandidatePool("no candidate ego pairs to rank");

  RankedPredictions out;
  out.spec = v.spec();
  out.kind = kind;
  out.k = k;
  out.n_egos = egos.size();
  out.truncated = pool < k;
  out.entries.resize(heap.size());
  for (std::size_t i = heap.size(); i-- > 0;) {
    out.entries[i] = heap.top();
    heap.pop();
  }
  return out;
}

Confusion confusion(const RankedPredictions& preds, const SnapshotPair& snapshots,
                    std::size_t n_egos) {
  if (preds.n_egos != n_egos)
    throw MismatchedEgoSets("predictions ranked over " +
                            std::to_string(preds.n_egos) +
                            " egos, confusion over " + std::to_string(n_egos));
  const auto& e_new = snapshots.e_new;
  std::uint64_t tp = 0;
  for (const auto& e : preds.entries)
    if (std::binary_search(e_new.begin(), e_new.end(), e.pair)) ++tp;
  std::uint64_t L = preds.entries.size();
  std::uint64_t P = e_new.size();
  std::uint64_t pool =
      static_cast<std::uint64_t>(n_egos) * (n_egos - 1) / 2 -
      snapshots.e_old.size();
  Confusion c;
  c.tp = tp;
  c.fp = L - tp;
  c.fn = P - tp;
  c.tn = pool - (L + P - tp);
  return c;
}

PrCurve pr_curve_auc(const SlicedView& v, SimilarityKind kind,
                     const SnapshotPair& snapshots,
                     const SimilarityOptions& opts) {
  if (snapshots.e_new.empty())
    throw NoPositives("PR curve needs at least one new edge");
  const auto& egos = v.ego_ids();
  std::unordered_set<std::uint64_t> old_edges;
  for (const auto& p : snapshots.e_old) old_edges.insert(pack(p));

  // (score, is_positive) for the full candidate pool
  std::vector<std::pair<double, bool>> scored;
  for (std::size_t a = 0; a < egos.size(); ++a) {
    for (std::size_t b = a + 1; b < egos.size(); ++b) {
      Pair p{egos[a], egos[b]};
      if (old_edges.count(pack(p))) continue;
      bool pos = std::binary_search(snapshots.e_new.begin(),
                                    snapshots.e_new.end(), p);
      scored.emplace_back(score_value(v, kind, p.first, p.second, opts), pos);
    }
  }
  if (scored.empty()) throw EmptyCandidatePool("no candidate ego pairs");

  std::sort(scored.begin(), scored.end(),
            [](const auto& x, const auto& y) { return x.first > y.first; });
  const double total_pos = static_cast<double>(snapshots.e_new.size());

  PrCurve curve;
  std::uint64_t cum_tp = 0, cum_n = 0;
  std::size_t i = 0;
  while (i < scored.size()) {
    double s = scored[i].first;
    // one threshold per distinct score: everything scoring >= s is predicted
    for (; i < scored.size() && scored[i].first == s; ++i) {
      ++cum_n;
      if (scored[i].second) ++cum_tp;
    }
    double rec = static_cast<double>(cum_tp) / total_pos;
    double prec = static_cast<double>(cum_tp) / static_cast<double>(cum_n);
    curve.points.emplace_back(rec, prec);
  }

  // anchor at recall 0 with the precision of the smallest positive recall
  double first_prec = curve.points.back().second;
  for (const auto& [rec, prec] : curve.points) {
    if (rec > 0.0) {
      first_prec = prec;
      break;
    }
  }
  curve.points.insert(curve.points.begin(), {0.0, first_prec});

  double auc = 0.0;
  for (std::size_t j = 1; j < curve.points.size(); ++j) {
    auto [r0, p0] = curve.points[j - 1];
    auto [r1, p1] = curve.points[j];
    auc += (r1 - r0) * (p0 + p1) * 0.5;
  }
  curve.auc = auc;
  return curve;
}

}  // namespace circlelink
