#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "circlelink/ranking.hpp"

namespace circlelink {

/// One (pair, feature, label) training or test example.
struct LabeledExample {
  Pair pair;
  std::array<double, 4> features{};  // (CN, JC, AA, RA)
  bool label = false;
};

/// Fold assignment over the negative pool (every unordered ego pair that is
/// neither in e_old nor in e_new).  Folds partition only the negatives;
/// positives are fixed: e_old trains, e_new tests.
struct FoldPlan {
  int k_folds = 10;
  bool undersample = true;
  std::uint64_t seed = 0;
  std::vector<Pair> negatives;        // canonical ascending
  std::vector<std::uint8_t> fold_of;  // parallel to negatives
};

FoldPlan make_fold_plan(const SlicedView& v, const SnapshotPair& snapshots,
                        int k_folds = 10, bool undersample = true,
                        std::uint64_t seed = 0);

struct Dataset {
  std::vector<LabeledExample> train;
  std::vector<LabeledExample> test;
};

/// Assembles fold `fold`: train = e_old + out-of-fold negatives (down-sampled
/// to |e_old| with the fold-derived seed when the plan says so), test = e_new
/// + in-fold negatives.  No pair ever appears on both sides.  Throws
/// FoldOutOfRange and InsufficientNegatives.
Dataset build_dataset(const SlicedView& v, const SnapshotPair& snapshots,
                      const FoldPlan& plan, int fold,
                      const SimilarityOptions& opts = {});

enum class LearnerKind : std::uint8_t {
  LogisticRegression,
  GaussianNaiveBayes,
  DecisionTree,
  RandomForest,
};

const char* to_string(LearnerKind k);
LearnerKind learner_kind_from_string(std::string_view s);

/// A learner request: kind, seed, and kind-specific hyperparameters (missing
/// keys take the documented defaults).  Fitting is deterministic given the
/// seed.
///
/// defaults: logistic_regression {l2: 1e-4, learning_rate: 0.5,
/// iterations: 1500}; naive_bayes {variance_floor: 1e-9}; decision_tree
/// {min_leaf: 5, max_depth: 12}; random_forest {trees: 500, min_leaf: 1,
/// max_depth: 25, features_per_split: 2}.
struct Learner {
  LearnerKind kind = LearnerKind::LogisticRegression;
  std::uint64_t seed = 0;
  std::map<std::string, double> hyperparameters;
};

struct LogisticRegressionModel {
  std::array<double, 4> mean{}, stdev{};  // train standardization
  std::array<double, 4> weights{};
  double bias = 0.0;
};

struct GaussianNbModel {
  std::array<double, 2> log_prior{};          // [negative, positive]
  std::array<std::array<double, 4>, 2> mu{};  // per class, per feature
  std::array<std::array<double, 4>, 2> var{};
};

struct TreeNode {
  int feature = -1;    // -1 marks a leaf
  double threshold = 0.0;
  int left = -1, right = -1;
  double prob = 0.0;   // positive fraction at the node
};

struct DecisionTreeModel {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
};

struct RandomForestModel {
  std::vector<DecisionTreeModel> trees;
};

class FittedModel {
 public:
  using Impl = std::variant<LogisticRegressionModel, GaussianNbModel,
                            DecisionTreeModel, RandomForestModel>;

  FittedModel(LearnerKind kind, Learner learner, Impl impl)
      : kind_(kind), learner_(std::move(learner)), impl_(std::move(impl)) {}

  LearnerKind kind() const { return kind_; }
  const Impl& impl() const { return impl_; }

  double predict_probability(const std::array<double, 4>& features) const;

  /// Versioned JSON summary of the fitted parameters (schema_version 1).
  std::string to_json() const;

 private:
  LearnerKind kind_;
  Learner learner_;
  Impl impl_;
};

/// Throws SingleClassTrainingSet when train lacks a class and
/// NonFiniteFeature on NaN/inf features.
FittedModel fit(const Learner& learner, const std::vector<LabeledExample>& train);

/// Confusion over the test split at the given probability threshold
/// (>= threshold predicts positive).
Confusion predict_fold(const FittedModel& model,
                       const std::vector<LabeledExample>& test,
                       double threshold = 0.5);

}  // namespace circlelink
