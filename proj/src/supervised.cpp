#include "circlelink/supervised.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include <json.hpp>

#include "circlelink/errors.hpp"
#include "circlelink/rng.hpp"

namespace circlelink {

const char* to_string(LearnerKind k) {
  switch (k) {
    case LearnerKind::LogisticRegression: return "logistic_regression";
    case LearnerKind::GaussianNaiveBayes: return "naive_bayes";
    case LearnerKind::DecisionTree: return "decision_tree";
    case LearnerKind::RandomForest: return "random_forest";
  }
  return "logistic_regression";
}

LearnerKind learner_kind_from_string(std::string_view s) {
  if (s == "logistic_regression" || s == "lr")
    return LearnerKind::LogisticRegression;
  if (s == "naive_bayes" || s == "nb" || s == "gnb")
    return LearnerKind::GaussianNaiveBayes;
  if (s == "decision_tree" || s == "dt") return LearnerKind::DecisionTree;
  if (s == "random_forest" || s == "rf") return LearnerKind::RandomForest;
  throw ParseError("unknown learner '" + std::string(s) + "'");
}

namespace {

inline std::uint64_t pack(const Pair& p) {
  return (static_cast<std::uint64_t>(p.first) << 32) | p.second;
}

double hp(const std::map<std::string, double>& m, const char* key, double dflt) {
  auto it = m.find(key);
  return it == m.end() ? dflt : it->second;
}

}  // namespace

FoldPlan make_fold_plan(const SlicedView& v, const SnapshotPair& snapshots,
                        int k_folds, bool undersample, std::uint64_t seed) {
  if (k_folds < 2) throw std::invalid_argument("fold plan needs k_folds >= 2");
  FoldPlan plan;
  plan.k_folds = k_folds;
  plan.undersample = undersample;
  plan.seed = seed;

  std::unordered_set<std::uint64_t> taken;
  taken.reserve((snapshots.e_old.size() + snapshots.e_new.size()) * 2);
  for (const auto& p : snapshots.e_old) taken.insert(pack(p));
  for (const auto& p : snapshots.e_new) taken.insert(pack(p));

  const auto& egos = v.ego_ids();
  for (std::size_t a = 0; a < egos.size(); ++a)
    for (std::size_t b = a + 1; b < egos.size(); ++b)
      if (!taken.count(pack({egos[a], egos[b]})))
        plan.negatives.emplace_back(egos[a], egos[b]);

  // deterministic shuffled round-robin: every fold gets ~1/k of the pool
  std::vector<std::size_t> order(plan.negatives.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(mix_seed(seed, 0xF01D));
  rng.shuffle(order);
  plan.fold_of.resize(plan.negatives.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    plan.fold_of[order[i]] = static_cast<std::uint8_t>(i % k_folds);
  return plan;
}

Dataset build_dataset(const SlicedView& v, const SnapshotPair& snapshots,
                      const FoldPlan& plan, int fold,
                      const SimilarityOptions& opts) {
  if (fold < 0 || fold >= plan.k_folds)
    throw FoldOutOfRange("fold " + std::to_string(fold) + " outside [0, " +
                         std::to_string(plan.k_folds) + ")");

  Dataset ds;
  auto add = [&](std::vector<LabeledExample>& dst, const Pair& p, bool label) {
    dst.push_back({p, feature_vector(v, p.first, p.second, opts), label});
  };

  for (const auto& p : snapshots.e_old) add(ds.train, p, true);

  std::vector<std::size_t> available;  // out-of-fold negative indices
  for (std::size_t i = 0; i < plan.negatives.size(); ++i)
    if (plan.fold_of[i] != fold) available.push_back(i);

  if (plan.undersample) {
    std::size_t want = snapshots.e_old.size();
    if (available.size() < want)
      throw InsufficientNegatives(
          "fold " + std::to_string(fold) + " has " +
          std::to_string(available.size()) + " negatives, need " +
          std::to_string(want));
    Rng rng(mix_seed(plan.seed, 1000 + static_cast<std::uint64_t>(fold)));
    auto picks = rng.sample_indices(available.size(), want);
    std::sort(picks.begin(), picks.end());  // keep canonical pair order
    for (auto pi : picks) add(ds.train, plan.negatives[available[pi]], false);
  } else {
    for (auto i : available) add(ds.train, plan.negatives[i], false);
  }

  for (const auto& p : snapshots.e_new) add(ds.test, p, true);
  for (std::size_t i = 0; i < plan.negatives.size(); ++i)
    if (plan.fold_of[i] == fold) add(ds.test, plan.negatives[i], false);
  return ds;
}

// ---------------------------------------------------------------------------
// learners

namespace {

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

LogisticRegressionModel fit_logistic(const Learner& learner,
                                     const std::vector<LabeledExample>& train) {
  const double l2 = hp(learner.hyperparameters, "l2", 1e-4);
  const double lr = hp(learner.hyperparameters, "learning_rate", 0.5);
  const int iters =
      static_cast<int>(hp(learner.hyperparameters, "iterations", 1500));
  const std::size_t n = train.size();

  LogisticRegressionModel m;
  // standardize with train statistics only
  for (int f = 0; f < 4; ++f) {
    double s = 0.0;
    for (const auto& ex : train) s += ex.features[f];
    m.mean[f] = s / static_cast<double>(n);
    double v = 0.0;
    for (const auto& ex : train) {
      double d = ex.features[f] - m.mean[f];
      v += d * d;
    }
    m.stdev[f] = std::sqrt(v / static_cast<double>(n));
    if (m.stdev[f] <= 0.0) m.stdev[f] = 1.0;  // constant feature
  }
  std::vector<std::array<double, 4>> x(n);
  for (std::size_t i = 0; i < n; ++i)
    for (int f = 0; f < 4; ++f)
      x[i][f] = (train[i].features[f] - m.mean[f]) / m.stdev[f];

  // full-batch gradient ascent on the penalized log-likelihood
  for (int it = 0; it < iters; ++it) {
    std::array<double, 4> grad{};
    double grad_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double z = m.bias;
      for (int f = 0; f < 4; ++f) z += m.weights[f] * x[i][f];
      double err = (train[i].label ? 1.0 : 0.0) - sigmoid(z);
      for (int f = 0; f < 4; ++f) grad[f] += err * x[i][f];
      grad_b += err;
    }
    for (int f = 0; f < 4; ++f)
      m.weights[f] += lr * (grad[f] / static_cast<double>(n) - l2 * m.weights[f]);
    m.bias += lr * grad_b / static_cast<double>(n);
  }
  return m;
}

GaussianNbModel fit_naive_bayes(const Learner& learner,
                                const std::vector<LabeledExample>& train) {
  const double floor = hp(learner.hyperparameters, "variance_floor", 1e-9);
  GaussianNbModel m;
  std::array<std::size_t, 2> count{};
  for (const auto& ex : train) {
    int c = ex.label ? 1 : 0;
    ++count[c];
    for (int f = 0; f < 4; ++f) m.mu[c][f] += ex.features[f];
  }
  for (int c = 0; c < 2; ++c)
    for (int f = 0; f < 4; ++f) m.mu[c][f] /= static_cast<double>(count[c]);
  for (const auto& ex : train) {
    int c = ex.label ? 1 : 0;
    for (int f = 0; f < 4; ++f) {
      double d = ex.features[f] - m.mu[c][f];
      m.var[c][f] += d * d;
    }
  }
  for (int c = 0; c < 2; ++c) {
    m.log_prior[c] = std::log(static_cast<double>(count[c]) /
                              static_cast<double>(train.size()));
    for (int f = 0; f < 4; ++f) {
      m.var[c][f] /= static_cast<double>(count[c]);
      if (m.var[c][f] < floor) m.var[c][f] = floor;
    }
  }
  return m;
}

struct TreeParams {
  int min_leaf = 5;
  int max_depth = 12;
  int features_per_split = 0;  // 0 = consider all features
};

struct TreeBuilder {
  const std::vector<std::array<double, 4>>& x;
  const std::vector<std::uint8_t>& y;
  TreeParams params;
  Rng* rng;  // only used when features_per_split > 0
  std::vector<TreeNode> nodes;

  // weighted Gini impurity of a (pos, total) split side
  static double gini(double pos, double total) {
    if (total == 0.0) return 0.0;
    double p = pos / total;
    return 2.0 * p * (1.0 - p);
  }

  int build(std::vector<int> idx, int depth) {
    double pos = 0.0;
    for (int i : idx) pos += y[i];
    int node_id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    nodes[node_id].prob = pos / static_cast<double>(idx.size());

    bool pure = pos == 0.0 || pos == static_cast<double>(idx.size());
    if (pure || depth >= params.max_depth ||
        idx.size() < 2 * static_cast<std::size_t>(params.min_leaf))
      return node_id;

    // candidate features: all, or a random subset for forests
    std::array<int, 4> feats{0, 1, 2, 3};
    int n_feats = 4;
    if (params.features_per_split > 0 && params.features_per_split < 4) {
      for (int i = 0; i < params.features_per_split; ++i) {
        int j = i + static_cast<int>(rng->uniform_index(4 - i));
        std::swap(feats[i], feats[j]);
      }
      n_feats = params.features_per_split;
      // fixed evaluation order regardless of the draw order above
      std::sort(feats.begin(), feats.begin() + n_feats);
    }

    // exhaustive boundary search, strictly-better-impurity wins: the choice
    // depends only on the ordering of feature values, never on their scale
    const double total = static_cast<double>(idx.size());
    double best_impurity = gini(pos, total);
    int best_feature = -1;
    std::size_t best_boundary = 0;
    std::vector<int> sorted = idx;
    std::vector<int> best_sorted;
    for (int fi = 0; fi < n_feats; ++fi) {
      int f = feats[fi];
      std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
        if (x[a][f] != x[b][f]) return x[a][f] < x[b][f];
        return a < b;
      });
      double left_pos = 0.0;
      for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        left_pos += y[sorted[i]];
        if (x[sorted[i]][f] == x[sorted[i + 1]][f]) continue;  // not a boundary
        double nl = static_cast<double>(i + 1);
        double nr = total - nl;
        if (nl < params.min_leaf || nr < params.min_leaf) continue;
        double impurity =
            (nl * gini(left_pos, nl) + nr * gini(pos - left_pos, nr)) / total;
        if (impurity < best_impurity) {
          best_impurity = impurity;
          best_feature = f;
          best_boundary = i;
          best_sorted = sorted;
        }
      }
    }
    if (best_feature < 0) return node_id;  // no admissible split improves

    double at = x[best_sorted[best_boundary]][best_feature];
    double after = x[best_sorted[best_boundary + 1]][best_feature];
    std::vector<int> left_idx(best_sorted.begin(),
                              best_sorted.begin() + best_boundary + 1);
    std::vector<int> right_idx(best_sorted.begin() + best_boundary + 1,
                               best_sorted.end());
    nodes[node_id].feature = best_feature;
    nodes[node_id].threshold = at + (after - at) / 2.0;  // midpoint
    int l = build(std::move(left_idx), depth + 1);
    int r = build(std::move(right_idx), depth + 1);
    nodes[node_id].left = l;
    nodes[node_id].right = r;
    return node_id;
  }
};

DecisionTreeModel fit_tree(const std::vector<LabeledExample>& train,
                           const TreeParams& params, Rng* rng,
                           const std::vector<int>* bootstrap = nullptr) {
  std::vector<std::array<double, 4>> x(train.size());
  std::vector<std::uint8_t> y(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    x[i] = train[i].features;
    y[i] = train[i].label ? 1 : 0;
  }
  std::vector<int> idx;
  if (bootstrap) {
    idx = *bootstrap;
  } else {
    idx.resize(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) idx[i] = static_cast<int>(i);
  }
  TreeBuilder builder{x, y, params, rng, {}};
  builder.build(std::move(idx), 0);
  DecisionTreeModel m;
  m.nodes = std::move(builder.nodes);
  return m;
}

DecisionTreeModel fit_decision_tree(const Learner& learner,
                                    const std::vector<LabeledExample>& train) {
  TreeParams p;
  p.min_leaf = static_cast<int>(hp(learner.hyperparameters, "min_leaf", 5));
  p.max_depth = static_cast<int>(hp(learner.hyperparameters, "max_depth", 12));
  return fit_tree(train, p, nullptr);
}

RandomForestModel fit_random_forest(const Learner& learner,
                                    const std::vector<LabeledExample>& train) {
  TreeParams p;
  p.min_leaf = static_cast<int>(hp(learner.hyperparameters, "min_leaf", 1));
  p.max_depth = static_cast<int>(hp(learner.hyperparameters, "max_depth", 25));
  p.features_per_split = static_cast<int>(
      hp(learner.hyperparameters, "features_per_split", 2));
  int n_trees = static_cast<int>(hp(learner.hyperparameters, "trees", 500));

  RandomForestModel m;
  m.trees.resize(n_trees);
  const int n = static_cast<int>(train.size());
  // per-tree derived seeds: trees are independent and order-insensitive
  for (int t = 0; t < n_trees; ++t) {
    Rng rng(mix_seed(learner.seed, static_cast<std::uint64_t>(t)));
    std::vector<int> boot(n);
    for (int i = 0; i < n; ++i)
      boot[i] = static_cast<int>(rng.uniform_index(n));
    m.trees[t] = fit_tree(train, p, &rng, &boot);
  }
  return m;
}

double tree_prob(const DecisionTreeModel& m, const std::array<double, 4>& f) {
  int cur = 0;
  while (m.nodes[cur].feature >= 0) {
    const TreeNode& nd = m.nodes[cur];
    cur = f[nd.feature] <= nd.threshold ? nd.left : nd.right;
  }
  return m.nodes[cur].prob;
}

}  // namespace

double FittedModel::predict_probability(const std::array<double, 4>& f) const {
  if (const auto* lr = std::get_if<LogisticRegressionModel>(&impl_)) {
    double z = lr->bias;
    for (int i = 0; i < 4; ++i)
      z += lr->weights[i] * (f[i] - lr->mean[i]) / lr->stdev[i];
    return sigmoid(z);
  }
  if (const auto* nb = std::get_if<GaussianNbModel>(&impl_)) {
    std::array<double, 2> logp = nb->log_prior;
    for (int c = 0; c < 2; ++c)
      for (int i = 0; i < 4; ++i) {
        double d = f[i] - nb->mu[c][i];
        logp[c] += -0.5 * (std::log(2.0 * M_PI * nb->var[c][i]) +
                           d * d / nb->var[c][i]);
      }
    double mx = std::max(logp[0], logp[1]);
    double e0 = std::exp(logp[0] - mx), e1 = std::exp(logp[1] - mx);
    return e1 / (e0 + e1);
  }
  if (const auto* dt = std::get_if<DecisionTreeModel>(&impl_))
    return tree_prob(*dt, f);
  const auto& rf = std::get<RandomForestModel>(impl_);
  double sum = 0.0;
  for (const auto& t : rf.trees) sum += tree_prob(t, f);
  return sum / static_cast<double>(rf.trees.size());
}

FittedModel fit(const Learner& learner, const std::vector<LabeledExample>& train) {
  if (train.empty()) throw SingleClassTrainingSet("empty training set");
  bool has_pos = false, has_neg = false;
  for (const auto& ex : train) {
    (ex.label ? has_pos : has_neg) = true;
    for (double f : ex.features)
      if (!std::isfinite(f))
        throw NonFiniteFeature("non-finite feature on pair (" +
                               std::to_string(ex.pair.first) + ", " +
                               std::to_string(ex.pair.second) + ")");
  }
  if (!has_pos || !has_neg)
    throw SingleClassTrainingSet("training set has a single class");

  switch (learner.kind) {
    case LearnerKind::LogisticRegression:
      return {learner.kind, learner, fit_logistic(learner, train)};
    case LearnerKind::GaussianNaiveBayes:
      return {learner.kind, learner, fit_naive_bayes(learner, train)};
    case LearnerKind::DecisionTree:
      return {learner.kind, learner, fit_decision_tree(learner, train)};
    case LearnerKind::RandomForest:
      return {learner.kind, learner, fit_random_forest(learner, train)};
  }
  throw std::invalid_argument("unknown learner kind");
}

Confusion predict_fold(const FittedModel& model,
                       const std::vector<LabeledExample>& test,
                       double threshold) {
  Confusion c;
  for (const auto& ex : test) {
    bool predicted = model.predict_probability(ex.features) >= threshold;
    if (predicted && ex.label) ++c.tp;
    else if (predicted && !ex.label) ++c.fp;
    else if (!predicted && ex.label) ++c.fn;
    else ++c.tn;
  }
  return c;
}

std::string FittedModel::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = to_string(kind_);
  j["seed"] = learner_.seed;
  j["hyperparameters"] = learner_.hyperparameters;

  auto tree_json = [](const DecisionTreeModel& t) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& nd : t.nodes)
      nodes.push_back({{"feature", nd.feature},
                       {"threshold", nd.threshold},
                       {"left", nd.left},
                       {"right", nd.right},
                       {"prob", nd.prob}});
    return nodes;
  };

  if (const auto* lr = std::get_if<LogisticRegressionModel>(&impl_)) {
    j["model"] = {{"mean", lr->mean},
                  {"stdev", lr->stdev},
                  {"weights", lr->weights},
                  {"bias", lr->bias}};
  } else if (const auto* nb = std::get_if<GaussianNbModel>(&impl_)) {
    j["model"] = {{"log_prior", nb->log_prior},
                  {"mu", nb->mu},
                  {"var", nb->var}};
  } else if (const auto* dt = std::get_if<DecisionTreeModel>(&impl_)) {
    j["model"] = {{"nodes", tree_json(*dt)}};
  } else {
    const auto& rf = std::get<RandomForestModel>(impl_);
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& t : rf.trees) trees.push_back(tree_json(t));
    j["model"] = {{"trees", std::move(trees)}};
  }
  return j.dump();
}

}  // namespace circlelink
