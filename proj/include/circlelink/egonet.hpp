#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "circlelink/graph.hpp"

namespace circlelink {

/// One logged contact event, ego -> alter, at an epoch-seconds timestamp.
struct InteractionRecord {
  std::string ego;
  std::string alter;
  std::int64_t timestamp = 0;
};

/// Calendar-month activity summary of one user.
struct ActivityProfile {
  std::int64_t first_ts = 0;
  std::int64_t last_ts = 0;
  /// month_index -> number of events; months with zero events are absent here
  /// but still count toward the observation span.
  std::map<std::int64_t, std::uint32_t> monthly_counts;
  /// number of months with at least one event
  std::uint32_t months_active = 0;
};

/// Throws EmptyProfile when `timestamps` is empty.
ActivityProfile build_activity_profile(const std::vector<std::int64_t>& timestamps);

/// Calendar months spanned by the profile, inclusive of both endpoints.
int span_months(const ActivityProfile& p);

/// True when at least `min_fraction` of the spanned calendar months (zero
/// months included in the denominator) have a count of at least
/// min_rate * days-in-that-month.  Defaults encode "an event every 3 days in
/// at least half of the months".
bool regularity_filter(const ActivityProfile& p, double min_rate = 1.0 / 3.0,
                       double min_fraction = 0.5);

/// True when the span that remains after discarding the first
/// `burn_in_months` is at least `min_span_months`.  A stand-in for a real
/// stationarity test; both knobs are configurable.
bool stationarity_filter(const ActivityProfile& p, int burn_in_months = 6,
                         int min_span_months = 12);

/// Contacts per 365-day year for each alter in one ego's records:
/// count / max(window_end - first record with that alter, 1 day).
/// Records after window_end throw FutureTimestamp.
std::map<std::string, double> contact_frequencies(
    const std::vector<InteractionRecord>& records, std::int64_t window_end);

enum class CircleLevel : std::uint8_t { C1, C2, C3, C4, C5, Active, All };

const char* to_string(CircleLevel level);
CircleLevel circle_level_from_string(std::string_view s);

/// One frequency cluster: members sorted ascending, plus the mean contact
/// frequency of the cluster.
struct Circle {
  std::vector<NodeId> members;
  double mean_frequency = 0.0;
};

/// Concentric contact circles of a single ego.  clusters are ordered by
/// descending mean frequency; circle k is the union of clusters 1..k, so the
/// circles are nested and circle(optimal_circle_count) equals the active set.
class EgoNetwork {
 public:
  EgoNetwork() = default;
  EgoNetwork(NodeId ego, std::vector<Circle> clusters,
             std::vector<NodeId> acquaintances);

  NodeId ego() const { return ego_; }
  int optimal_circle_count() const { return static_cast<int>(clusters_.size()); }
  const std::vector<Circle>& clusters() const { return clusters_; }
  /// union of all clusters (alters contacted at least at the active
  /// threshold), sorted
  const std::vector<NodeId>& active() const { return active_; }
  /// alters below the active threshold, sorted
  const std::vector<NodeId>& acquaintances() const { return acquaintances_; }
  /// active + acquaintances, sorted
  const std::vector<NodeId>& all_members() const { return all_; }

  /// Members of the requested level, sorted ascending.  Ck maps to circle
  /// min(k, optimal_circle_count).
  const std::vector<NodeId>& circle_members(CircleLevel level) const;

 private:
  NodeId ego_ = 0;
  std::vector<Circle> clusters_;
  std::vector<NodeId> acquaintances_;
  std::vector<std::vector<NodeId>> cumulative_;  // cumulative_[k] = clusters 0..k
  std::vector<NodeId> active_;
  std::vector<NodeId> all_;
};

/// Mean distance from each point to its ceil(0.3 n)-th nearest neighbour;
/// the default mean-shift bandwidth.  Returns 0 for a single point.
double default_bandwidth(std::vector<double> points);

/// 1-D mean shift with a flat kernel of radius `bandwidth` (window inclusive).
/// Every input point iterates against the fixed sample until the maximum
/// movement drops below 1e-6 x data range; returns the converged mode of each
/// point, in input order.
std::vector<double> mean_shift_modes(const std::vector<double>& points,
                                     double bandwidth);

struct ClusterParams {
  double active_threshold = 1.0;        // contacts / year
  std::optional<double> bandwidth;      // default: default_bandwidth heuristic
};

/// Splits alters at the active threshold, clusters the active frequencies by
/// mean shift (converged modes closer than bandwidth/2 merge), and orders the
/// clusters by descending mean frequency.  All input frequencies must be > 0.
/// Throws EmptyEgoNetwork when no alter reaches the threshold — callers treat
/// that ego as filtered out.
EgoNetwork cluster_circles(NodeId ego,
                           const std::vector<std::pair<NodeId, double>>& freqs,
                           const ClusterParams& params = {});

/// Builds an ego network per requested ego straight from adjacency weights
/// (weights are contact frequencies).  Egos with no active alter (or no
/// neighbours at all) are skipped and reported through `filtered_out`.
std::map<NodeId, EgoNetwork> ego_networks_from_graph(
    const InteractionGraph& g, const std::vector<NodeId>& egos,
    const ClusterParams& params = {},
    std::vector<NodeId>* filtered_out = nullptr);

struct ExtractionParams {
  std::int64_t window_end = 0;
  double min_rate = 1.0 / 3.0;
  double min_fraction = 0.5;
  int burn_in_months = 6;
  int min_span_months = 12;
  bool apply_regularity = true;
  bool apply_stationarity = true;
};

enum class FilterReason : std::uint8_t { Regularity, Stationarity };

const char* to_string(FilterReason r);

/// Per-ego contact frequencies for every ego that survives the activity
/// filters.  `filtered` records why the others were dropped.
struct ExtractionResult {
  std::map<std::string, std::map<std::string, double>> frequencies;
  std::map<std::string, FilterReason> filtered;
};

ExtractionResult extract_frequencies(const std::vector<InteractionRecord>& records,
                                     const ExtractionParams& params);

}  // namespace circlelink
