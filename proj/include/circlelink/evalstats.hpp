#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace circlelink {

struct Confusion {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  bool operator==(const Confusion&) const = default;
};

/// A ratio plus a flag marking a 0/0 denominator (reported as 0).
struct Rate {
  double value = 0.0;
  bool degenerate = false;
};

Rate precision(const Confusion& c);
Rate recall(const Confusion& c);
Rate f1(const Confusion& c);

/// Component-wise sum; the micro-averaged confusion across folds.
Confusion microaverage(const std::vector<Confusion>& parts);

/// Equal-tailed Bayesian credible interval.  `point` is the posterior mean
/// for the Beta posteriors and the posterior median for the Monte Carlo F1
/// posterior; lo <= point <= hi always holds.
struct CredibleInterval {
  double point = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

/// Posterior Beta(tp + lambda, fp + lambda) over precision under a symmetric
/// Beta(lambda, lambda) prior; lambda = 0.5 is Jeffreys, 1.0 is uniform.
CredibleInterval precision_ci(const Confusion& c, double lambda = 0.5,
                              double mass = 0.95);

/// Posterior Beta(tp + lambda, fn + lambda) over recall.
CredibleInterval recall_ci(const Confusion& c, double lambda = 0.5,
                           double mass = 0.95);

/// F1 posterior via Dirichlet(tp + lambda, fp + lambda, fn + lambda) Monte
/// Carlo: each draw maps to 2 p1 / (2 p1 + p2 + p3); reports the empirical
/// median and equal-tailed quantiles.  Deterministic given the seed;
/// sampling is done in fixed-size blocks with per-block derived seeds, so
/// blocks may be evaluated in parallel without changing the result.
CredibleInterval f1_ci(const Confusion& c, double lambda = 0.5,
                       double mass = 0.95, std::size_t samples = 100000,
                       std::uint64_t seed = 0x5eedf1);

/// One output row of an experiment; common to the unsupervised and the
/// supervised protocol (auc is empty for supervised rows).
struct ReportRow {
  std::string slice;      // e.g. "C1", "active:domain"
  std::string method;     // similarity kind or learner name
  std::string k_or_fold;  // "K=100" or "folds=10"
  Confusion counts;
  CredibleInterval precision_ci;
  CredibleInterval recall_ci;
  CredibleInterval f1_ci;
  std::optional<double> auc;
};

/// Header: slice,method,k_or_fold,tp,fp,fn,tn,precision,p_lo,p_hi,recall,
/// r_lo,r_hi,f1,f1_lo,f1_hi,auc.  Numeric cells use "%.12g"; the file is
/// byte-deterministic for identical rows.
std::string report_csv(const std::vector<ReportRow>& rows);
/// Same rows as a JSON array (sorted keys, fixed layout).
std::string report_json(const std::vector<ReportRow>& rows);

}  // namespace circlelink
