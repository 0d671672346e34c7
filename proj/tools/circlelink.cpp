// circlelink command line: circle extraction, link prediction, synthetic data
// and the scaling benchmark, all on CSV in / CSV+JSON out.
#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "circlelink/bench.hpp"
#include "circlelink/csvio.hpp"
#include "circlelink/errors.hpp"
#include "circlelink/experiment.hpp"
#include "circlelink/synthetic.hpp"
#include "circlelink/timeutil.hpp"

namespace cl = circlelink;

namespace {

std::string default_out_dir() {
  if (const char* env = std::getenv("CIRCLELINK_OUTPUT_DIR"); env && *env)
    return env;
  return ".";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cl::ConfigError("cannot write '" + path + "'");
  out << text;
}

std::string join_path(const std::string& dir, const char* name) {
  return (std::filesystem::path(dir) / name).string();
}

struct ExperimentCli {
  std::string config_path;
  std::string log_path, edges_path, classes_path, new_path, window_end, out_dir;
  std::vector<std::string> slices, methods, learners;
  std::vector<std::size_t> k_list;
  std::optional<std::uint64_t> seed;
  std::optional<int> folds;
  std::optional<double> active_threshold, bandwidth;
  bool no_undersample = false, no_auc = false, domain_degree = false;
  std::optional<std::size_t> threads;

  void add_options(CLI::App* sub, bool supervised) {
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--log", log_path, "interaction log CSV (src,dst,timestamp)");
    sub->add_option("--edges", edges_path, "weighted edge CSV (src,dst,weight)");
    sub->add_option("--classes", classes_path, "node class CSV (node,class)");
    sub->add_option("--new", new_path, "second-snapshot edge CSV");
    sub->add_option("--window-end", window_end,
                    "end of the observation window (ISO-8601 or epoch)");
    sub->add_option("--slices", slices,
                    "slice list, e.g. C1,C3:domain,active,all")
        ->delimiter(',');
    sub->add_option("--seed", seed, "master seed");
    sub->add_option("--active-threshold", active_threshold,
                    "contacts/year for the active network");
    sub->add_option("--bandwidth", bandwidth,
                    "mean-shift bandwidth (default: nearest-neighbour heuristic)");
    sub->add_flag("--domain-degree", domain_degree,
                  "penalize AA/RA by ego+domain degree instead of full degree");
    sub->add_option("--threads", threads, "worker threads (0 = all cores)");
    sub->add_option("--out", out_dir, "output directory");
    if (supervised) {
      sub->add_option("--learners", learners,
                      "lr,nb,dt,rf (default: lr,nb,dt)")
          ->delimiter(',');
      sub->add_option("--folds", folds, "negative-pool folds (default 10)");
      sub->add_flag("--no-undersample", no_undersample,
                    "train on the full out-of-fold negative set");
    } else {
      sub->add_option("--methods", methods, "CN,JC,AA,RA subset")
          ->delimiter(',');
      sub->add_option("--k", k_list, "top-K values, e.g. 10,100")
          ->delimiter(',');
      sub->add_flag("--no-auc", no_auc, "skip the PR-AUC column");
    }
  }

  cl::ExperimentConfig resolve(cl::ExperimentMode mode) const {
    cl::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = cl::load_experiment_config(config_path);
    cfg.mode = mode;
    if (!log_path.empty()) {
      cfg.interaction_log = log_path;
      cfg.weighted_edges.clear();
    }
    if (!edges_path.empty()) {
      cfg.weighted_edges = edges_path;
      cfg.interaction_log.clear();
    }
    if (!classes_path.empty()) cfg.node_classes = classes_path;
    if (!new_path.empty()) cfg.new_edges = new_path;
    if (!window_end.empty()) cfg.window_end = window_end;
    if (!slices.empty()) {
      cfg.slices.clear();
      for (const auto& s : slices)
        cfg.slices.push_back(cl::slice_spec_from_string(s));
    }
    if (!methods.empty()) {
      cfg.methods.clear();
      for (const auto& s : methods)
        cfg.methods.push_back(cl::similarity_kind_from_string(s));
    }
    if (!k_list.empty()) cfg.k_list = k_list;
    if (!learners.empty()) {
      cfg.learners.clear();
      for (const auto& s : learners)
        cfg.learners.push_back({cl::learner_kind_from_string(s), 0, {}});
    }
    if (folds) cfg.k_folds = *folds;
    if (no_undersample) cfg.undersample = false;
    if (no_auc) cfg.with_auc = false;
    if (seed) cfg.seed = *seed;
    if (active_threshold) cfg.active_threshold = *active_threshold;
    if (bandwidth) cfg.bandwidth = *bandwidth;
    if (domain_degree) cfg.similarity.domain_restricted_degree = true;
    if (threads) cfg.threads = *threads;
    if (!out_dir.empty())
      cfg.output_dir = out_dir;
    else if (config_path.empty())
      cfg.output_dir = default_out_dir();
    cl::validate_config(cfg);
    return cfg;
  }
};

void print_rows(const cl::ExperimentOutcome& outcome) {
  std::printf("%-12s %-20s %-10s %10s %10s %10s %10s\n", "slice", "method",
              "k/fold", "precision", "recall", "f1", "auc");
  for (const auto& r : outcome.rows) {
    char auc[32] = "-";
    if (r.auc) std::snprintf(auc, sizeof(auc), "%.4f", *r.auc);
    std::printf("%-12s %-20s %-10s %10.4f %10.4f %10.4f %10s\n",
                r.slice.c_str(), r.method.c_str(), r.k_or_fold.c_str(),
                r.precision_ci.point, r.recall_ci.point, r.f1_ci.point, auc);
  }
  for (const auto& w : outcome.warnings)
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  std::printf("reports: %s, %s\nmanifest: %s\n",
              outcome.report_csv_path.c_str(),
              outcome.report_json_path.c_str(), outcome.manifest_path.c_str());
}

int run_extract_ego(const std::string& log_path, const std::string& window_end,
                    double active_threshold, std::optional<double> bandwidth,
                    const cl::ExtractionParams& filter_knobs,
                    const std::string& out_dir) {
  auto records = cl::load_interaction_log(log_path);
  cl::ExtractionParams params = filter_knobs;
  if (window_end.empty()) {
    params.window_end = 0;
    for (const auto& r : records)
      params.window_end = std::max(params.window_end, r.timestamp);
  } else {
    params.window_end = cl::parse_timestamp(window_end);
  }
  auto extracted = cl::extract_frequencies(records, params);

  std::vector<cl::WeightedEdge> edges;
  std::map<std::string, cl::NodeClass> classes;
  for (const auto& [ego, freqs] : extracted.frequencies) {
    classes[ego] = cl::NodeClass::Ego;
    for (const auto& [alter, freq] : freqs) {
      classes.try_emplace(alter, cl::NodeClass::Generic);
      edges.push_back({ego, alter, freq});
    }
  }
  auto graph = cl::build_graph(edges, classes, nullptr);
  std::vector<cl::NodeId> filtered_out;
  auto egonets = cl::ego_networks_from_graph(
      graph, graph.nodes_of_class(cl::NodeClass::Ego),
      {active_threshold, bandwidth}, &filtered_out);

  std::string circles = "ego,ring,alter,frequency\n";
  char buf[256];
  for (const auto& [id, net] : egonets) {
    const auto& ego = graph.label(id);
    const auto& rings = net.clusters();
    for (std::size_t r = 0; r < rings.size(); ++r)
      for (auto alter : rings[r].members) {
        std::snprintf(buf, sizeof(buf), "%s,%zu,%s,%.12g\n", ego.c_str(),
                      r + 1, graph.label(alter).c_str(),
                      *graph.edge_weight(id, alter));
        circles += buf;
      }
    for (auto alter : net.acquaintances()) {
      std::snprintf(buf, sizeof(buf), "%s,acq,%s,%.12g\n", ego.c_str(),
                    graph.label(alter).c_str(), *graph.edge_weight(id, alter));
      circles += buf;
    }
  }
  std::string dropped = "ego,reason\n";
  for (const auto& [ego, reason] : extracted.filtered)
    dropped += ego + "," + cl::to_string(reason) + "\n";
  for (auto id : filtered_out) dropped += graph.label(id) + ",no_active_alter\n";

  std::filesystem::create_directories(out_dir);
  write_text(join_path(out_dir, "circles.csv"), circles);
  write_text(join_path(out_dir, "filtered.csv"), dropped);
  std::printf("%zu ego networks (%zu filtered) -> %s\n", egonets.size(),
              extracted.filtered.size() + filtered_out.size(), out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circle-aware link prediction on interaction graphs"};
  app.require_subcommand(1);

  // extract-ego
  auto* extract = app.add_subcommand(
      "extract-ego", "interaction log -> activity filters -> contact circles");
  std::string x_log, x_window, x_out = default_out_dir();
  double x_threshold = 1.0;
  std::optional<double> x_bandwidth;
  cl::ExtractionParams x_filters;
  extract->add_option("--log", x_log, "interaction log CSV")->required();
  extract->add_option("--window-end", x_window, "observation window end");
  extract->add_option("--active-threshold", x_threshold, "contacts/year");
  extract->add_option("--bandwidth", x_bandwidth, "mean-shift bandwidth");
  extract->add_option("--min-rate", x_filters.min_rate,
                      "events/day for a regular month");
  extract->add_option("--min-fraction", x_filters.min_fraction,
                      "fraction of regular months required");
  extract->add_option("--burn-in", x_filters.burn_in_months,
                      "months discarded before the span check");
  extract->add_option("--min-span", x_filters.min_span_months,
                      "months that must remain after burn-in");
  bool x_no_reg = false, x_no_stat = false;
  extract->add_flag("--no-regularity", x_no_reg, "skip the regularity filter");
  extract->add_flag("--no-stationarity", x_no_stat,
                    "skip the stationarity filter");
  extract->add_option("--out", x_out, "output directory");

  // predict / supervised
  auto* predict = app.add_subcommand(
      "predict", "unsupervised top-K ranking per (slice, heuristic)");
  ExperimentCli predict_cli;
  predict_cli.add_options(predict, false);
  auto* supervised = app.add_subcommand(
      "supervised", "10-fold supervised evaluation per (slice, learner)");
  ExperimentCli supervised_cli;
  supervised_cli.add_options(supervised, true);

  // synth
  auto* synth = app.add_subcommand(
      "synth", "synthetic two-snapshot interaction graph with planted circles");
  cl::SyntheticSpec s_spec;
  std::string s_out = default_out_dir();
  std::vector<int> s_sizes;
  std::vector<double> s_means;
  synth->add_option("--egos", s_spec.n_egos, "number of egos");
  synth->add_option("--community-size", s_spec.community_size,
                    "egos per community");
  synth->add_option("--sizes", s_sizes, "cumulative ring sizes (default 2,5,15,50)")
      ->delimiter(',');
  synth->add_option("--means", s_means,
                    "ring frequency means (default 48,16,5.3,1.8)")
      ->delimiter(',');
  synth->add_option("--jitter", s_spec.freq_jitter, "frequency jitter");
  synth->add_option("--link-rate", s_spec.p_link_within,
                    "within-community e_old probability");
  synth->add_option("--new-rate", s_spec.p_new_within,
                    "within-community e_new probability");
  synth->add_option("--domain-fraction", s_spec.domain_fraction,
                    "fraction of domain-specific alters");
  synth->add_option("--seed", s_spec.seed, "generator seed");
  synth->add_option("--out", s_out, "output directory");

  // bench
  auto* bench = app.add_subcommand(
      "bench", "scaling benchmark with log-log slope estimates");
  std::vector<std::size_t> b_sizes{48, 96, 192, 384};
  int b_reps = 3;
  std::uint64_t b_seed = 1;
  std::string b_out = default_out_dir();
  bench->add_option("--sizes", b_sizes, "ego counts, increasing")
      ->delimiter(',');
  bench->add_option("--reps", b_reps, "repetitions per timing (best-of)");
  bench->add_option("--seed", b_seed, "instance seed");
  bench->add_option("--out", b_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (extract->parsed()) {
      x_filters.apply_regularity = !x_no_reg;
      x_filters.apply_stationarity = !x_no_stat;
      return run_extract_ego(x_log, x_window, x_threshold, x_bandwidth,
                             x_filters, x_out);
    }
    if (predict->parsed()) {
      auto cfg = predict_cli.resolve(cl::ExperimentMode::Unsupervised);
      print_rows(cl::run_experiment(cfg));
      return 0;
    }
    if (supervised->parsed()) {
      auto cfg = supervised_cli.resolve(cl::ExperimentMode::Supervised);
      print_rows(cl::run_experiment(cfg));
      return 0;
    }
    if (synth->parsed()) {
      if (!s_sizes.empty()) s_spec.circle_sizes = s_sizes;
      if (!s_means.empty()) s_spec.circle_means = s_means;
      auto data = cl::generate_synthetic(s_spec);
      std::filesystem::create_directories(s_out);
      cl::write_weighted_edges(data.edges, join_path(s_out, "edges.csv"));
      cl::write_node_classes(data.classes, join_path(s_out, "classes.csv"));
      cl::write_edge_pairs(data.new_edges, join_path(s_out, "new_edges.csv"));
      std::string truth = "ego,ring,alter\n";
      for (const auto& [ego, rings] : data.truth_rings)
        for (std::size_t r = 0; r < rings.size(); ++r)
          for (const auto& alter : rings[r])
            truth += ego + "," + std::to_string(r + 1) + "," + alter + "\n";
      write_text(join_path(s_out, "truth.csv"), truth);
      std::printf("%zu edges, %zu new links -> %s\n", data.edges.size(),
                  data.new_edges.size(), s_out.c_str());
      return 0;
    }
    if (bench->parsed()) {
      auto report = cl::bench_scaling(b_sizes, b_reps, b_seed);
      std::filesystem::create_directories(b_out);
      write_text(join_path(b_out, "bench.csv"), bench_csv(report));
      std::printf("ego extraction slope (vs egos):   %.3f\n",
                  report.slope_ego_extract);
      std::printf("all-pairs scoring slope (vs egos): %.3f\n",
                  report.slope_allpairs);
      std::printf("feature pass slope (vs pairs):     %.3f\n",
                  report.slope_features);
      std::printf("C1 <= All wall-time on all graphs: %s\n",
                  report.c1_leq_all ? "yes" : "no");
      std::printf("table: %s\n", join_path(b_out, "bench.csv").c_str());
      return 0;
    }
  } catch (const cl::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const cl::Error& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
  return 0;
}
