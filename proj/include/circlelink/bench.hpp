#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace circlelink {

/// One benchmark instance.  Wall-times are best-of-`reps` measurements of
/// in-memory computation only; graph construction and I/O sit outside every
/// timer.
struct BenchPoint {
  std::size_t n_egos = 0;       // |V_e| of the instance
  std::size_t n_edges = 0;      // ego-ego edges |E_e|
  std::size_t train_pairs = 0;  // undersampled training pairs (2 |E_e|)
  double ego_extract_ms = 0.0;  // circle extraction for every ego
  double allpairs_all_ms = 0.0; // RA over all ego pairs, All slice
  double allpairs_c1_ms = 0.0;  // RA over all ego pairs, C1 slice
  double features_ms = 0.0;     // 4-feature pass over the training pairs
  double checksum = 0.0;        // folded scores; keeps the optimizer honest
};

struct BenchReport {
  std::vector<BenchPoint> points;
  /// Feature-pass times over nested prefixes of the largest instance's
  /// training pairs: (pair count, ms).  Varying only the pair count on a
  /// fixed graph isolates the per-pair cost from the cache footprint of the
  /// graph itself, which would otherwise confound the linearity fit.
  std::vector<std::pair<std::size_t, double>> feature_ladder;
  /// log-log least-squares slopes
  double slope_ego_extract = 0.0;  // ego_extract_ms vs n_egos
  double slope_allpairs = 0.0;     // allpairs_all_ms vs n_egos
  double slope_features = 0.0;     // ladder ms vs pair count
  bool c1_leq_all = true;          // allpairs_c1_ms <= allpairs_all_ms everywhere
};

/// Runs the scaling suite on synthetic graphs with the given ego counts
/// (strictly increasing, at least two).  `reps` timed repetitions per stage,
/// keeping the minimum.
BenchReport bench_scaling(const std::vector<std::size_t>& ego_counts,
                          int reps = 3, std::uint64_t seed = 1);

/// slope of least-squares fit of log(y) on log(x)
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

std::string bench_csv(const BenchReport& report);

}  // namespace circlelink
