#include "circlelink/egonet.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "circlelink/errors.hpp"
#include "circlelink/timeutil.hpp"

namespace circlelink {

ActivityProfile build_activity_profile(const std::vector<std::int64_t>& timestamps) {
  if (timestamps.empty())
    throw EmptyProfile("activity profile needs at least one event");
  ActivityProfile p;
  p.first_ts = timestamps.front();
  p.last_ts = timestamps.front();
  for (auto ts : timestamps) {
    p.first_ts = std::min(p.first_ts, ts);
    p.last_ts = std::max(p.last_ts, ts);
    ++p.monthly_counts[month_index(ts)];
  }
  p.months_active = static_cast<std::uint32_t>(p.monthly_counts.size());
  return p;
}

int span_months(const ActivityProfile& p) {
  return static_cast<int>(month_index(p.last_ts) - month_index(p.first_ts)) + 1;
}

bool regularity_filter(const ActivityProfile& p, double min_rate,
                       double min_fraction) {
  if (p.monthly_counts.empty())
    throw EmptyProfile("regularity filter on empty profile");
  std::int64_t first = month_index(p.first_ts);
  std::int64_t last = month_index(p.last_ts);
  int total = static_cast<int>(last - first) + 1;
  int satisfied = 0;
  for (std::int64_t m = first; m <= last; ++m) {
    auto it = p.monthly_counts.find(m);
    double count = it == p.monthly_counts.end() ? 0.0 : it->second;
    if (count >= min_rate * days_in_month_of_index(m)) ++satisfied;
  }
  return static_cast<double>(satisfied) / total >= min_fraction;
}

bool stationarity_filter(const ActivityProfile& p, int burn_in_months,
                         int min_span_months) {
  if (p.monthly_counts.empty())
    throw EmptyProfile("stationarity filter on empty profile");
  return span_months(p) - burn_in_months >= min_span_months;
}

std::map<std::string, double> contact_frequencies(
    const std::vector<InteractionRecord>& records, std::int64_t window_end) {
  struct Tally {
    std::int64_t first = 0;
    std::uint64_t count = 0;
  };
  std::map<std::string, Tally> tallies;
  for (const auto& r : records) {
    if (r.timestamp > window_end)
      throw FutureTimestamp("record at " + format_timestamp(r.timestamp) +
                            " is after the observation window end");
    auto [it, inserted] = tallies.try_emplace(r.alter);
    if (inserted || r.timestamp < it->second.first) it->second.first = r.timestamp;
    ++it->second.count;
  }
  std::map<std::string, double> freqs;
  for (const auto& [alter, t] : tallies) {
    std::int64_t duration = window_end - t.first;
    if (duration < kSecondsPerDay) duration = kSecondsPerDay;  // 1-day floor
    freqs[alter] = static_cast<double>(t.count) * kSecondsPerYear /
                   static_cast<double>(duration);
  }
  return freqs;
}

const char* to_string(CircleLevel level) {
  switch (level) {
    case CircleLevel::C1: return "C1";
    case CircleLevel::C2: return "C2";
    case CircleLevel::C3: return "C3";
    case CircleLevel::C4: return "C4";
    case CircleLevel::C5: return "C5";
    case CircleLevel::Active: return "active";
    case CircleLevel::All: return "all";
  }
  return "all";
}

CircleLevel circle_level_from_string(std::string_view s) {
  if (s == "C1" || s == "c1") return CircleLevel::C1;
  if (s == "C2" || s == "c2") return CircleLevel::C2;
  if (s == "C3" || s == "c3") return CircleLevel::C3;
  if (s == "C4" || s == "c4") return CircleLevel::C4;
  if (s == "C5" || s == "c5") return CircleLevel::C5;
  if (s == "active" || s == "Active") return CircleLevel::Active;
  if (s == "all" || s == "All") return CircleLevel::All;
  throw ParseError("unknown circle level '" + std::string(s) + "'");
}

const char* to_string(FilterReason r) {
  switch (r) {
    case FilterReason::Regularity: return "regularity";
    case FilterReason::Stationarity: return "stationarity";
  }
  return "regularity";
}

EgoNetwork::EgoNetwork(NodeId ego, std::vector<Circle> clusters,
                       std::vector<NodeId> acquaintances)
    : ego_(ego),
      clusters_(std::move(clusters)),
      acquaintances_(std::move(acquaintances)) {
  std::sort(acquaintances_.begin(), acquaintances_.end());
  cumulative_.reserve(clusters_.size());
  std::vector<NodeId> acc;
  for (auto& c : clusters_) {
    assert(std::is_sorted(c.members.begin(), c.members.end()));
    std::vector<NodeId> next;
    next.reserve(acc.size() + c.members.size());
    std::merge(acc.begin(), acc.end(), c.members.begin(), c.members.end(),
               std::back_inserter(next));
    acc = std::move(next);
    cumulative_.push_back(acc);
  }
  active_ = acc;
  all_.reserve(active_.size() + acquaintances_.size());
  std::merge(active_.begin(), active_.end(), acquaintances_.begin(),
             acquaintances_.end(), std::back_inserter(all_));
}

const std::vector<NodeId>& EgoNetwork::circle_members(CircleLevel level) const {
  static const std::vector<NodeId> kEmpty;
  switch (level) {
    case CircleLevel::Active:
      return active_;
    case CircleLevel::All:
      return all_;
    default: {
      int k = static_cast<int>(level) + 1;  // C1 -> 1 ... C5 -> 5
      int idx = std::min(k, optimal_circle_count());
      if (idx == 0) return kEmpty;
      return cumulative_[static_cast<std::size_t>(idx - 1)];
    }
  }
}

double default_bandwidth(std::vector<double> points) {
  const std::size_t n = points.size();
  if (n < 2) return 0.0;
  std::sort(points.begin(), points.end());
  const std::size_t q = static_cast<std::size_t>(
      std::ceil(0.3 * static_cast<double>(n)));  // q-th nearest neighbour
  double sum = 0.0;
  std::vector<double> dists(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    // distances on a sorted line can be enumerated by a two-pointer walk, but
    // n is a Dunbar-sized neighbourhood, so the direct O(n log n) per point
    // is plenty
    std::size_t m = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) dists[m++] = std::fabs(points[j] - points[i]);
    std::nth_element(dists.begin(), dists.begin() + (q - 1), dists.end());
    sum += dists[q - 1];
  }
  return sum / static_cast<double>(n);
}

std::vector<double> mean_shift_modes(const std::vector<double>& points,
                                     double bandwidth) {
  // sorted copy so each window is a contiguous run found by binary search
  std::vector<double> data(points);
  std::sort(data.begin(), data.end());
  double range = data.empty() ? 0.0 : data.back() - data.front();
  double tol = 1e-6 * range;
  if (bandwidth < 1e-12) bandwidth = 1e-12;

  std::vector<double> prefix(data.size() + 1, 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) prefix[i + 1] = prefix[i] + data[i];

  std::vector<double> modes(points);
  constexpr int kMaxIter = 1000;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    double max_move = 0.0;
    for (auto& x : modes) {
      auto lo = std::lower_bound(data.begin(), data.end(), x - bandwidth);
      auto hi = std::upper_bound(data.begin(), data.end(), x + bandwidth);
      auto a = static_cast<std::size_t>(lo - data.begin());
      auto b = static_cast<std::size_t>(hi - data.begin());
      double next = (prefix[b] - prefix[a]) / static_cast<double>(b - a);
      max_move = std::max(max_move, std::fabs(next - x));
      x = next;
    }
    if (max_move <= tol) break;
  }
  return modes;
}

EgoNetwork cluster_circles(NodeId ego,
                           const std::vector<std::pair<NodeId, double>>& freqs,
                           const ClusterParams& params) {
  std::vector<std::pair<NodeId, double>> active;
  std::vector<NodeId> acquaintances;
  for (const auto& [alter, f] : freqs) {
    assert(f > 0.0);
    if (f >= params.active_threshold)
      active.emplace_back(alter, f);
    else
      acquaintances.push_back(alter);
  }
  if (active.empty())
    throw EmptyEgoNetwork("no alter reaches the active threshold");

  // Sort by (frequency, id): clustering becomes permutation-invariant and the
  // grouping below can walk modes in line order.
  std::sort(active.begin(), active.end(),
            [](const auto& a, const auto& b) {
              return a.second != b.second ? a.second < b.second
                                          : a.first < b.first;
            });

  std::vector<double> points(active.size());
  for (std::size_t i = 0; i < active.size(); ++i) points[i] = active[i].second;

  double bandwidth = params.bandwidth ? *params.bandwidth
                                      : default_bandwidth(points);
  if (bandwidth < 1e-12) bandwidth = 1e-12;
  std::vector<double> modes = mean_shift_modes(points, bandwidth);

  // Points are sorted by frequency and mean shift preserves that order, so
  // grouping modes closer than bandwidth/2 is a single forward walk.
  std::vector<Circle> clusters;
  std::vector<double> sums;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (clusters.empty() || !(std::fabs(modes[i] - modes[i - 1]) < bandwidth / 2.0)) {
      clusters.emplace_back();
      sums.push_back(0.0);
    }
    clusters.back().members.push_back(active[i].first);
    sums.back() += active[i].second;
  }
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    clusters[i].mean_frequency =
        sums[i] / static_cast<double>(clusters[i].members.size());
    std::sort(clusters[i].members.begin(), clusters[i].members.end());
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const Circle& a, const Circle& b) {
              return a.mean_frequency > b.mean_frequency;
            });
  return EgoNetwork(ego, std::move(clusters), std::move(acquaintances));
}

std::map<NodeId, EgoNetwork> ego_networks_from_graph(
    const InteractionGraph& g, const std::vector<NodeId>& egos,
    const ClusterParams& params, std::vector<NodeId>* filtered_out) {
  std::map<NodeId, EgoNetwork> nets;
  for (NodeId ego : egos) {
    auto nbrs = g.neighbors(ego);
    auto w = g.neighbor_weights(ego);
    std::vector<std::pair<NodeId, double>> freqs;
    freqs.reserve(nbrs.size());
    for (std::size_t i = 0; i < nbrs.size(); ++i)
      if (w[i] > 0.0) freqs.emplace_back(nbrs[i], w[i]);
    try {
      nets.emplace(ego, cluster_circles(ego, freqs, params));
    } catch (const EmptyEgoNetwork&) {
      if (filtered_out) filtered_out->push_back(ego);
    }
  }
  return nets;
}

ExtractionResult extract_frequencies(const std::vector<InteractionRecord>& records,
                                     const ExtractionParams& params) {
  std::map<std::string, std::vector<InteractionRecord>> by_ego;
  for (const auto& r : records) by_ego[r.ego].push_back(r);

  ExtractionResult out;
  for (auto& [ego, recs] : by_ego) {
    std::vector<std::int64_t> timestamps;
    timestamps.reserve(recs.size());
    for (const auto& r : recs) timestamps.push_back(r.timestamp);
    ActivityProfile profile = build_activity_profile(timestamps);
    if (params.apply_regularity &&
        !regularity_filter(profile, params.min_rate, params.min_fraction)) {
      out.filtered.emplace(ego, FilterReason::Regularity);
      continue;
    }
    if (params.apply_stationarity &&
        !stationarity_filter(profile, params.burn_in_months,
                             params.min_span_months)) {
      out.filtered.emplace(ego, FilterReason::Stationarity);
      continue;
    }
    out.frequencies.emplace(ego, contact_frequencies(recs, params.window_end));
  }
  return out;
}

}  // namespace circlelink
