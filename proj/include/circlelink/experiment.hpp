#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circlelink/egonet.hpp"
#include "circlelink/evalstats.hpp"
#include "circlelink/similarity.hpp"
#include "circlelink/slicing.hpp"
#include "circlelink/supervised.hpp"

namespace circlelink {

inline constexpr const char* kVersion = "0.1.0";

enum class ExperimentMode : std::uint8_t { Unsupervised, Supervised };

const char* to_string(ExperimentMode m);
ExperimentMode experiment_mode_from_string(std::string_view s);

/// Everything one run needs.  Exactly one of `interaction_log` and
/// `weighted_edges` must be set; `new_edges` (the second snapshot) is always
/// required.  The per-mode method lists must be non-empty for the active
/// mode, as must `slices`.
struct ExperimentConfig {
  // ingestion
  std::string interaction_log;           // CSV src,dst,timestamp
  std::string weighted_edges;            // CSV src,dst,weight
  std::string node_classes;              // CSV node,class (required with edges)
  std::string new_edges;                 // CSV src,dst[,weight]
  std::string window_end;                // log mode; empty = latest record
  ExtractionParams filters;              // log-mode activity filters

  // circle extraction
  double active_threshold = 1.0;
  std::optional<double> bandwidth;       // empty = default heuristic

  // evaluation plan
  ExperimentMode mode = ExperimentMode::Unsupervised;
  std::vector<SliceSpec> slices{SliceSpec{CircleLevel::All, false}};
  std::vector<SimilarityKind> methods{
      SimilarityKind::CommonNeighbors, SimilarityKind::Jaccard,
      SimilarityKind::AdamicAdar, SimilarityKind::ResourceAllocation};
  std::vector<std::size_t> k_list{100};  // unsupervised top-K values
  bool with_auc = true;                  // unsupervised PR-AUC column
  std::vector<Learner> learners{
      {LearnerKind::LogisticRegression, 0, {}},
      {LearnerKind::GaussianNaiveBayes, 0, {}},
      {LearnerKind::DecisionTree, 0, {}}};
  int k_folds = 10;
  bool undersample = true;
  SimilarityOptions similarity;

  std::uint64_t seed = 0;
  std::string output_dir = ".";
  std::size_t threads = 0;               // 0 = hardware concurrency
};

/// Reads a JSON config file.  Unknown keys and malformed values throw
/// ConfigError; so do violated invariants (both input kinds set, empty slice
/// list, K = 0, folds < 2, unreadable paths).  When the file does not set
/// "output_dir" the CIRCLELINK_OUTPUT_DIR environment variable is used, then
/// ".".
ExperimentConfig load_experiment_config(const std::string& path);

/// Validates a config assembled in memory (same checks as the loader, minus
/// file readability for empty paths).
void validate_config(const ExperimentConfig& cfg);

/// The resolved config as JSON text (the manifest embeds this; a run is
/// reproducible from it).
std::string config_json(const ExperimentConfig& cfg);

struct ExperimentOutcome {
  std::vector<ReportRow> rows;
  std::vector<std::string> warnings;
  std::string report_csv_path;
  std::string report_json_path;
  std::string manifest_path;
};

/// Runs the full pipeline: ingest -> circles -> per-(slice, method) jobs ->
/// report.csv / report.json / manifest.json under cfg.output_dir.  Jobs run
/// concurrently; rows are emitted in config order, so the reports are
/// byte-deterministic for a fixed config + seed (wall-times live only in the
/// manifest).  On a module error the completed rows are still flushed, the
/// manifest gets status "failed", and the error is rethrown.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

}  // namespace circlelink
