#include "circlelink/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "circlelink/csvio.hpp"
#include "circlelink/errors.hpp"
#include "circlelink/graph.hpp"
#include "circlelink/ranking.hpp"
#include "circlelink/timeutil.hpp"

namespace circlelink {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

const char* to_string(ExperimentMode m) {
  return m == ExperimentMode::Unsupervised ? "unsupervised" : "supervised";
}

ExperimentMode experiment_mode_from_string(std::string_view s) {
  if (s == "unsupervised") return ExperimentMode::Unsupervised;
  if (s == "supervised") return ExperimentMode::Supervised;
  throw ParseError("unknown mode '" + std::string(s) + "'");
}

void validate_config(const ExperimentConfig& cfg) {
  auto bad = [](const std::string& what) { throw ConfigError(what); };
  const bool has_log = !cfg.interaction_log.empty();
  const bool has_edges = !cfg.weighted_edges.empty();
  if (has_log == has_edges)
    bad("exactly one of interaction_log and weighted_edges must be set");
  if (has_edges && cfg.node_classes.empty())
    bad("weighted_edges input requires node_classes (nothing marks the egos)");
  if (cfg.new_edges.empty()) bad("new_edges (the second snapshot) is required");
  for (const auto* p : {&cfg.interaction_log, &cfg.weighted_edges,
                        &cfg.node_classes, &cfg.new_edges})
    if (!p->empty() && !std::filesystem::is_regular_file(*p))
      bad("input file '" + *p + "' is not readable");
  if (cfg.slices.empty()) bad("slice list is empty");
  if (cfg.mode == ExperimentMode::Unsupervised) {
    if (cfg.methods.empty()) bad("method list is empty");
    if (cfg.k_list.empty()) bad("K list is empty");
    for (auto k : cfg.k_list)
      if (k == 0) bad("K values must be >= 1");
  } else {
    if (cfg.learners.empty()) bad("learner list is empty");
    if (cfg.k_folds < 2) bad("folds must be >= 2");
  }
  if (!cfg.window_end.empty()) {
    try {
      parse_timestamp(cfg.window_end);
    } catch (const ParseError& e) {
      bad(std::string("window_end: ") + e.what());
    }
  }
  if (cfg.bandwidth && *cfg.bandwidth <= 0.0) bad("bandwidth must be > 0");
  if (cfg.active_threshold <= 0.0) bad("active_threshold must be > 0");
  if (cfg.similarity.log_base != 0.0 && cfg.similarity.log_base <= 1.0)
    bad("log_base must be > 1 (or 0 for natural log)");
}

std::string config_json(const ExperimentConfig& cfg) {
  json j;
  j["interaction_log"] = cfg.interaction_log;
  j["weighted_edges"] = cfg.weighted_edges;
  j["node_classes"] = cfg.node_classes;
  j["new_edges"] = cfg.new_edges;
  j["window_end"] = cfg.window_end;
  j["filters"] = {{"min_rate", cfg.filters.min_rate},
                  {"min_fraction", cfg.filters.min_fraction},
                  {"burn_in_months", cfg.filters.burn_in_months},
                  {"min_span_months", cfg.filters.min_span_months},
                  {"apply_regularity", cfg.filters.apply_regularity},
                  {"apply_stationarity", cfg.filters.apply_stationarity}};
  j["active_threshold"] = cfg.active_threshold;
  if (cfg.bandwidth)
    j["bandwidth"] = *cfg.bandwidth;
  else
    j["bandwidth"] = nullptr;
  j["mode"] = to_string(cfg.mode);
  j["slices"] = json::array();
  for (const auto& s : cfg.slices) j["slices"].push_back(to_string(s));
  j["methods"] = json::array();
  for (auto k : cfg.methods) j["methods"].push_back(to_string(k));
  j["k_list"] = cfg.k_list;
  j["with_auc"] = cfg.with_auc;
  j["learners"] = json::array();
  for (const auto& l : cfg.learners)
    j["learners"].push_back({{"kind", to_string(l.kind)},
                             {"seed", l.seed},
                             {"hyperparameters", l.hyperparameters}});
  j["folds"] = cfg.k_folds;
  j["undersample"] = cfg.undersample;
  j["similarity"] = {
      {"log_base", cfg.similarity.log_base},
      {"domain_restricted_degree", cfg.similarity.domain_restricted_degree}};
  j["seed"] = cfg.seed;
  j["output_dir"] = cfg.output_dir;
  j["threads"] = cfg.threads;
  return j.dump(2) + "\n";
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  static const std::vector<std::string> known = {
      "interaction_log", "weighted_edges", "node_classes", "new_edges",
      "window_end",      "filters",        "active_threshold",
      "bandwidth",       "mode",           "slices",
      "methods",         "k_list",         "with_auc",
      "learners",        "folds",          "undersample",
      "similarity",      "seed",           "output_dir",
      "threads"};
  ExperimentConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (std::find(known.begin(), known.end(), key) == known.end())
        throw ConfigError("config '" + path + "': unknown key '" + key + "'");
      if (key == "interaction_log") cfg.interaction_log = value;
      else if (key == "weighted_edges") cfg.weighted_edges = value;
      else if (key == "node_classes") cfg.node_classes = value;
      else if (key == "new_edges") cfg.new_edges = value;
      else if (key == "window_end") cfg.window_end = value;
      else if (key == "filters") {
        for (const auto& [fk, fv] : value.items()) {
          if (fk == "min_rate") cfg.filters.min_rate = fv;
          else if (fk == "min_fraction") cfg.filters.min_fraction = fv;
          else if (fk == "burn_in_months") cfg.filters.burn_in_months = fv;
          else if (fk == "min_span_months") cfg.filters.min_span_months = fv;
          else if (fk == "apply_regularity") cfg.filters.apply_regularity = fv;
          else if (fk == "apply_stationarity") cfg.filters.apply_stationarity = fv;
          else
            throw ConfigError("config '" + path + "': unknown filter key '" +
                              fk + "'");
        }
      } else if (key == "active_threshold") cfg.active_threshold = value;
      else if (key == "bandwidth") {
        if (!value.is_null()) cfg.bandwidth = value.get<double>();
      } else if (key == "mode")
        cfg.mode = experiment_mode_from_string(value.get<std::string>());
      else if (key == "slices") {
        cfg.slices.clear();
        for (const auto& s : value)
          cfg.slices.push_back(slice_spec_from_string(s.get<std::string>()));
      } else if (key == "methods") {
        cfg.methods.clear();
        for (const auto& s : value)
          cfg.methods.push_back(
              similarity_kind_from_string(s.get<std::string>()));
      } else if (key == "k_list") {
        cfg.k_list.clear();
        for (const auto& k : value) cfg.k_list.push_back(k.get<std::size_t>());
      } else if (key == "with_auc") cfg.with_auc = value;
      else if (key == "learners") {
        cfg.learners.clear();
        for (const auto& l : value) {
          Learner learner;
          if (l.is_string()) {
            learner.kind = learner_kind_from_string(l.get<std::string>());
          } else {
            for (const auto& [lk, lv] : l.items()) {
              if (lk == "kind")
                learner.kind = learner_kind_from_string(lv.get<std::string>());
              else if (lk == "seed") learner.seed = lv;
              else if (lk == "hyperparameters")
                for (const auto& [hk, hv] : lv.items())
                  learner.hyperparameters[hk] = hv.get<double>();
              else
                throw ConfigError("config '" + path +
                                  "': unknown learner key '" + lk + "'");
            }
          }
          cfg.learners.push_back(std::move(learner));
        }
      } else if (key == "folds") cfg.k_folds = value;
      else if (key == "undersample") cfg.undersample = value;
      else if (key == "similarity") {
        for (const auto& [sk, sv] : value.items()) {
          if (sk == "log_base") cfg.similarity.log_base = sv;
          else if (sk == "domain_restricted_degree")
            cfg.similarity.domain_restricted_degree = sv;
          else
            throw ConfigError("config '" + path +
                              "': unknown similarity key '" + sk + "'");
        }
      } else if (key == "seed") cfg.seed = value;
      else if (key == "output_dir") cfg.output_dir = value;
      else if (key == "threads") cfg.threads = value;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  } catch (const ParseError& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  if (!j.contains("output_dir")) {
    if (const char* env = std::getenv("CIRCLELINK_OUTPUT_DIR"); env && *env)
      cfg.output_dir = env;
  }
  validate_config(cfg);
  return cfg;
}

namespace {

struct Ingested {
  InteractionGraph graph;
  std::map<NodeId, EgoNetwork> egonets;
  SnapshotPair snapshots;
};

Ingested ingest(const ExperimentConfig& cfg, std::vector<std::string>& warnings) {
  std::vector<WeightedEdge> edges;
  std::map<std::string, NodeClass> classes;
  if (!cfg.node_classes.empty()) classes = load_node_classes(cfg.node_classes);

  if (!cfg.interaction_log.empty()) {
    auto records = load_interaction_log(cfg.interaction_log);
    std::int64_t window_end = 0;
    if (cfg.window_end.empty()) {
      for (const auto& r : records)
        window_end = std::max(window_end, r.timestamp);
    } else {
      window_end = parse_timestamp(cfg.window_end);
    }
    ExtractionParams params = cfg.filters;
    params.window_end = window_end;
    auto extracted = extract_frequencies(records, params);

    bool have_domain = std::any_of(
        classes.begin(), classes.end(),
        [](const auto& kv) { return kv.second == NodeClass::DomainSpecific; });
    for (const auto& [ego, freqs] : extracted.frequencies) {
      classes[ego] = NodeClass::Ego;
      for (const auto& [alter, freq] : freqs) {
        classes.try_emplace(alter, NodeClass::Generic);
        edges.push_back({ego, alter, freq});
      }
    }
    for (const auto& [ego, reason] : extracted.filtered) {
      // an unreliable ego is still a platform member other egos interact
      // with; it just stops being a prediction endpoint
      classes[ego] =
          have_domain ? NodeClass::DomainSpecific : NodeClass::Generic;
      warnings.push_back("ego '" + ego + "' failed the " +
                         std::string(to_string(reason)) +
                         " filter and was demoted");
    }
  } else {
    edges = load_weighted_edges(cfg.weighted_edges);
  }

  Ingested out{build_graph(edges, classes, &warnings), {}, {}};
  ClusterParams cluster{cfg.active_threshold, cfg.bandwidth};
  std::vector<NodeId> filtered;
  out.egonets = ego_networks_from_graph(
      out.graph, out.graph.nodes_of_class(NodeClass::Ego), cluster, &filtered);
  if (!filtered.empty()) {
    bool have_domain =
        !out.graph.nodes_of_class(NodeClass::DomainSpecific).empty();
    for (NodeId id : filtered) {
      classes[out.graph.label(id)] =
          have_domain ? NodeClass::DomainSpecific : NodeClass::Generic;
      warnings.push_back("ego '" + out.graph.label(id) +
                         "' has no active alter and was demoted");
    }
    // same labels, same ids; only the classes change
    out.graph = build_graph(edges, classes, nullptr);
  }
  if (out.egonets.empty())
    throw EmptyCandidatePool("no ego network survived ingestion");

  std::vector<NodeId> ego_ids;
  ego_ids.reserve(out.egonets.size());
  for (const auto& [id, net] : out.egonets) {
    (void)net;
    ego_ids.push_back(id);
  }
  std::vector<Pair> e_old;
  for (NodeId i : ego_ids)
    for (NodeId nb : out.graph.neighbors(i))
      if (nb > i && std::binary_search(ego_ids.begin(), ego_ids.end(), nb))
        e_old.push_back({i, nb});

  std::vector<Pair> e_new;
  for (const auto& [a, b] : load_edge_pairs(cfg.new_edges)) {
    auto ia = out.graph.find(a), ib = out.graph.find(b);
    if (!ia || !ib) {
      warnings.push_back("new edge " + a + "," + b +
                         " mentions an unknown node; skipped");
      continue;
    }
    if (!std::binary_search(ego_ids.begin(), ego_ids.end(), *ia) ||
        !std::binary_search(ego_ids.begin(), ego_ids.end(), *ib)) {
      warnings.push_back("new edge " + a + "," + b +
                         " is not an ego-ego pair; skipped");
      continue;
    }
    e_new.push_back(canonical_pair(*ia, *ib));
  }
  out.snapshots = make_snapshot_pair(std::move(e_old), std::move(e_new));
  return out;
}

struct JobTiming {
  std::string slice;
  std::string method;
  double ms = 0.0;
};

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const auto t_start = Clock::now();
  ExperimentOutcome outcome;
  std::filesystem::create_directories(cfg.output_dir);
  const auto out_path = [&](const char* name) {
    return (std::filesystem::path(cfg.output_dir) / name).string();
  };
  outcome.report_csv_path = out_path("report.csv");
  outcome.report_json_path = out_path("report.json");
  outcome.manifest_path = out_path("manifest.json");

  json manifest;
  manifest["version"] = kVersion;
  manifest["status"] = "ok";
  manifest["config"] = json::parse(config_json(cfg));

  auto flush = [&](double ingest_ms, const std::vector<JobTiming>& timings,
                   const std::exception* failure) {
    if (failure) {
      manifest["status"] = "failed";
      manifest["error"] = failure->what();
    }
    manifest["warnings"] = outcome.warnings;
    manifest["row_count"] = outcome.rows.size();
    json jobs = json::array();
    for (const auto& t : timings)
      jobs.push_back({{"slice", t.slice}, {"method", t.method}, {"ms", t.ms}});
    manifest["timings_ms"] = {{"ingest", ingest_ms},
                              {"total", ms_since(t_start)},
                              {"jobs", std::move(jobs)}};
    write_file(outcome.report_csv_path, report_csv(outcome.rows));
    write_file(outcome.report_json_path, report_json(outcome.rows));
    write_file(outcome.manifest_path, manifest.dump(2) + "\n");
  };

  double ingest_ms = 0.0;
  std::optional<Ingested> data;
  try {
    data.emplace(ingest(cfg, outcome.warnings));
    ingest_ms = ms_since(t_start);
  } catch (const std::exception& e) {
    flush(ms_since(t_start), {}, &e);
    throw;
  }

  // one lazily-filled view per slice, shared by that slice's jobs
  std::vector<SlicedView> views;
  views.reserve(cfg.slices.size());
  for (const auto& spec : cfg.slices)
    views.emplace_back(data->graph, data->egonets, spec);

  const bool unsup = cfg.mode == ExperimentMode::Unsupervised;
  const std::size_t methods_per_slice =
      unsup ? cfg.methods.size() : cfg.learners.size();
  const std::size_t rows_per_job = unsup ? cfg.k_list.size() : 1;
  const std::size_t n_jobs = cfg.slices.size() * methods_per_slice;
  outcome.rows.resize(n_jobs * rows_per_job);
  std::vector<JobTiming> timings(n_jobs);

  std::mutex warn_mutex;
  auto warn = [&](std::string msg) {
    std::lock_guard<std::mutex> lock(warn_mutex);
    outcome.warnings.push_back(std::move(msg));
  };

  auto run_job = [&](std::size_t job) {
    const auto t_job = Clock::now();
    const std::size_t slice_idx = job / methods_per_slice;
    const std::size_t method_idx = job % methods_per_slice;
    const SlicedView& view = views[slice_idx];
    const std::string slice_name = to_string(cfg.slices[slice_idx]);
    ReportRow* rows = &outcome.rows[job * rows_per_job];

    if (unsup) {
      const SimilarityKind kind = cfg.methods[method_idx];
      std::optional<double> auc;
      if (cfg.with_auc) {
        if (data->snapshots.e_new.empty())
          warn("no usable new edges; AUC column left empty");
        else
          auc = pr_curve_auc(view, kind, data->snapshots, cfg.similarity).auc;
      }
      for (std::size_t ki = 0; ki < cfg.k_list.size(); ++ki) {
        auto preds = rank_candidates(view, kind, data->snapshots,
                                     cfg.k_list[ki], cfg.similarity);
        if (preds.truncated)
          warn("slice " + slice_name + " " + to_string(kind) + ": K=" +
               std::to_string(cfg.k_list[ki]) + " exceeds the candidate pool");
        Confusion c = confusion(preds, data->snapshots, view.ego_count());
        rows[ki] = {slice_name,
                    to_string(kind),
                    "K=" + std::to_string(cfg.k_list[ki]),
                    c,
                    precision_ci(c),
                    recall_ci(c),
                    f1_ci(c),
                    auc};
      }
      timings[job] = {slice_name, to_string(kind), ms_since(t_job)};
    } else {
      const Learner& learner = cfg.learners[method_idx];
      FoldPlan plan = make_fold_plan(view, data->snapshots, cfg.k_folds,
                                     cfg.undersample, cfg.seed);
      std::vector<Confusion> folds;
      folds.reserve(plan.k_folds);
      for (int fold = 0; fold < plan.k_folds; ++fold) {
        Dataset ds =
            build_dataset(view, data->snapshots, plan, fold, cfg.similarity);
        FittedModel model = fit(learner, ds.train);
        folds.push_back(predict_fold(model, ds.test));
      }
      Confusion micro = microaverage(folds);
      rows[0] = {slice_name,
                 to_string(learner.kind),
                 "folds=" + std::to_string(plan.k_folds),
                 micro,
                 precision_ci(micro),
                 recall_ci(micro),
                 f1_ci(micro),
                 std::nullopt};
      timings[job] = {slice_name, to_string(learner.kind), ms_since(t_job)};
    }
  };

  std::size_t n_threads = cfg.threads ? cfg.threads
                                      : std::thread::hardware_concurrency();
  n_threads = std::clamp<std::size_t>(n_threads, 1, n_jobs);

  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> bail{false};
  auto worker = [&] {
    for (;;) {
      std::size_t job = next.fetch_add(1);
      if (job >= n_jobs || bail.load()) return;
      try {
        run_job(job);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        bail.store(true);
        return;
      }
    }
  };
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  if (first_error) {
    try {
      std::rethrow_exception(first_error);
    } catch (const std::exception& e) {
      // drop rows the failed/aborted jobs never produced: a default row has
      // an empty slice name
      std::erase_if(outcome.rows,
                    [](const ReportRow& r) { return r.slice.empty(); });
      flush(ingest_ms, timings, &e);
      throw;
    }
  }

  flush(ingest_ms, timings, nullptr);
  return outcome;
}

}  // namespace circlelink
