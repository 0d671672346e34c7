#include "circlelink/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>

#include "circlelink/graph.hpp"
#include "circlelink/ranking.hpp"
#include "circlelink/rng.hpp"
#include "circlelink/similarity.hpp"
#include "circlelink/supervised.hpp"
#include "circlelink/synthetic.hpp"

namespace circlelink {

namespace {

using Clock = std::chrono::steady_clock;

/// best-of-`reps` wall time of one fn() call, in milliseconds.  Workloads
/// cheaper than ~2 ms are repeated back to back inside the timed region and
/// normalized, so timer granularity and scheduler noise cannot dominate the
/// sub-millisecond stages.
template <typename Fn>
double best_of(int reps, Fn&& fn) {
  auto timed = [&](int iters) {
    auto t0 = Clock::now();
    for (int i = 0; i < iters; ++i) fn();
    return std::chrono::duration<double, std::milli>(Clock::now() - t0)
        .count();
  };
  int iters = 1;
  double ms = timed(1);
  while (ms < 2.0 && iters < (1 << 16)) {
    iters *= 2;
    ms = timed(iters);
  }
  double best = ms / iters;
  for (int r = 1; r < reps; ++r) best = std::min(best, timed(iters) / iters);
  return best;
}

}  // namespace

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("need at least two (x, y) points");
  double sx = 0, sy = 0;
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    sx += lx[i];
    sy += ly[i];
  }
  double mx = sx / x.size(), my = sy / y.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  return num / den;
}

BenchReport bench_scaling(const std::vector<std::size_t>& ego_counts, int reps,
                          std::uint64_t seed) {
  if (ego_counts.size() < 2)
    throw std::invalid_argument("need at least two instance sizes");
  for (std::size_t i = 1; i < ego_counts.size(); ++i)
    if (ego_counts[i] <= ego_counts[i - 1])
      throw std::invalid_argument("instance sizes must be strictly increasing");
  if (reps < 1) throw std::invalid_argument("reps must be >= 1");

  BenchReport report;
  for (std::size_t size_idx = 0; size_idx < ego_counts.size(); ++size_idx) {
    SyntheticSpec spec;
    spec.n_egos = static_cast<int>(ego_counts[size_idx]);
    spec.seed = mix_seed(seed, size_idx);
    SyntheticData data = generate_synthetic(spec);

    BenchPoint point;
    point.n_egos = ego_counts[size_idx];

    InteractionGraph graph = build_graph(data.edges, data.classes, nullptr);
    std::vector<NodeId> ego_ids = graph.nodes_of_class(NodeClass::Ego);

    std::map<NodeId, EgoNetwork> egonets;
    point.ego_extract_ms = best_of(reps, [&] {
      egonets = ego_networks_from_graph(graph, ego_ids);
    });

    SlicedView view_all = slice(graph, egonets, {CircleLevel::All, false});
    SlicedView view_c1 = slice(graph, egonets, {CircleLevel::C1, false});
    double sink = 0.0;
    auto all_pairs = [&](const SlicedView& v) {
      double acc = 0.0;
      for (std::size_t a = 0; a < ego_ids.size(); ++a)
        for (std::size_t b = a + 1; b < ego_ids.size(); ++b)
          acc += score_value(v, SimilarityKind::ResourceAllocation, ego_ids[a],
                             ego_ids[b]);
      sink += acc;
    };
    // the first pass also fills the lazy slice cache; best-of-reps keeps the
    // warmed passes, which are the ones the cost model talks about
    point.allpairs_all_ms = best_of(reps, [&] { all_pairs(view_all); });
    point.allpairs_c1_ms = best_of(reps, [&] { all_pairs(view_c1); });

    // training pairs of fold 0 under undersampling: positives = e_old,
    // negatives downsampled to match.  Pool bookkeeping happens here, outside
    // the timer; the timed stage is the per-pair feature computation.
    std::vector<Pair> e_old;
    for (NodeId i : ego_ids)
      for (NodeId nb : graph.neighbors(i))
        if (nb > i &&
            std::binary_search(ego_ids.begin(), ego_ids.end(), nb))
          e_old.push_back({i, nb});
    std::vector<Pair> e_new;
    for (const auto& [a, b] : data.new_edges)
      e_new.push_back(canonical_pair(*graph.find(a), *graph.find(b)));
    SnapshotPair snaps = make_snapshot_pair(std::move(e_old), std::move(e_new));
    point.n_edges = snaps.e_old.size();

    FoldPlan plan = make_fold_plan(view_c1, snaps, 10, true, seed);
    std::vector<Pair> train_pairs = snaps.e_old;
    {
      std::vector<Pair> out_of_fold;
      for (std::size_t i = 0; i < plan.negatives.size(); ++i)
        if (plan.fold_of[i] != 0) out_of_fold.push_back(plan.negatives[i]);
      Rng rng(mix_seed(seed, 1000));
      for (auto idx :
           rng.sample_indices(out_of_fold.size(),
                              std::min(out_of_fold.size(), snaps.e_old.size())))
        train_pairs.push_back(out_of_fold[idx]);
    }
    point.train_pairs = train_pairs.size();
    point.features_ms = best_of(reps, [&] {
      double acc = 0.0;
      for (const auto& [a, b] : train_pairs) {
        auto f = feature_vector(view_c1, a, b);
        acc += f[0] + f[1] + f[2] + f[3];
      }
      sink += acc;
    });

    if (size_idx + 1 == ego_counts.size()) {
      // Pair-count ladder on this (largest) instance: the linearity claim is
      // about the pair count, so everything else — graph, slice cache,
      // degree distribution, memory traffic — must stay fixed while the pair
      // count varies.  Each measurement slides a window of `m` pairs through
      // the shuffled pool and always covers at least one full cycle, so every
      // window size streams the same working set with the same reuse
      // distance; timing a fixed prefix instead would let small windows run
      // from hot cache and bend the fit.
      Rng shuffle_rng(mix_seed(seed, 2000));
      const std::size_t pool = train_pairs.size();
      for (std::size_t i = pool; i > 1; --i)
        std::swap(train_pairs[i - 1],
                  train_pairs[shuffle_rng.uniform_index(i)]);
      auto window_ms = [&](std::size_t m) {
        std::size_t o = 0;
        auto pass = [&](int iters) {
          auto t0 = Clock::now();
          double acc = 0.0;
          for (int it = 0; it < iters; ++it) {
            for (std::size_t i = 0; i < m; ++i) {
              std::size_t at = o + i < pool ? o + i : o + i - pool;
              auto f = feature_vector(view_c1, train_pairs[at].first,
                                      train_pairs[at].second);
              acc += f[0] + f[1] + f[2] + f[3];
            }
            o += m;
            if (o >= pool) o -= pool;
          }
          sink += acc;
          return std::chrono::duration<double, std::milli>(Clock::now() - t0)
              .count();
        };
        int iters = static_cast<int>((pool + m - 1) / m);
        double ms = pass(iters);
        while (ms < 2.0 && iters < (1 << 16)) {
          iters *= 2;
          ms = pass(iters);
        }
        double best = ms / iters;
        for (int r = 1; r < reps; ++r)
          best = std::min(best, pass(iters) / iters);
        return best;
      };
      for (int denom : {8, 4, 2, 1}) {
        std::size_t m = pool / denom;
        if (m == 0 || (!report.feature_ladder.empty() &&
                       m <= report.feature_ladder.back().first))
          continue;
        report.feature_ladder.push_back({m, window_ms(m)});
      }
    }

    point.checksum = sink;
    report.points.push_back(point);
  }

  std::vector<double> n, t_ego, t_all, pairs, t_feat;
  for (const auto& p : report.points) {
    n.push_back(static_cast<double>(p.n_egos));
    t_ego.push_back(p.ego_extract_ms);
    t_all.push_back(p.allpairs_all_ms);
    report.c1_leq_all =
        report.c1_leq_all && p.allpairs_c1_ms <= p.allpairs_all_ms;
  }
  for (const auto& [m, ms] : report.feature_ladder) {
    pairs.push_back(static_cast<double>(m));
    t_feat.push_back(ms);
  }
  if (pairs.size() < 2) {
    // tiny instances can collapse the ladder; fall back to the per-size fit
    pairs.clear();
    t_feat.clear();
    for (const auto& p : report.points) {
      pairs.push_back(static_cast<double>(p.train_pairs));
      t_feat.push_back(p.features_ms);
    }
  }
  report.slope_ego_extract = loglog_slope(n, t_ego);
  report.slope_allpairs = loglog_slope(n, t_all);
  report.slope_features = loglog_slope(pairs, t_feat);
  return report;
}

std::string bench_csv(const BenchReport& report) {
  std::string out =
      "n_egos,n_edges,train_pairs,ego_extract_ms,allpairs_all_ms,"
      "allpairs_c1_ms,features_ms\n";
  char buf[256];
  for (const auto& p : report.points) {
    std::snprintf(buf, sizeof(buf), "%zu,%zu,%zu,%.6g,%.6g,%.6g,%.6g\n",
                  p.n_egos, p.n_edges, p.train_pairs, p.ego_extract_ms,
                  p.allpairs_all_ms, p.allpairs_c1_ms, p.features_ms);
    out += buf;
  }
  return out;
}

}  // namespace circlelink
