#include "circlelink/synthetic.hpp"

#include <algorithm>
#include <cstdio>

#include "circlelink/errors.hpp"
#include "circlelink/rng.hpp"

namespace circlelink {

namespace {

std::string tag(const char* prefix, int n) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%04d", prefix, n);
  return buf;
}

void validate(const SyntheticSpec& s) {
  auto bad = [](const std::string& what) { throw InfeasibleSpec(what); };
  if (s.n_egos < 1) bad("need at least 1 ego");
  if (s.community_size < 2) bad("community_size must be >= 2");
  if (s.circle_sizes.empty() || s.circle_sizes.size() != s.circle_means.size())
    bad("circle_sizes and circle_means must be non-empty and parallel");
  for (std::size_t i = 0; i < s.circle_sizes.size(); ++i) {
    if (s.circle_sizes[i] <= 0) bad("circle sizes must be positive");
    if (i && s.circle_sizes[i] <= s.circle_sizes[i - 1])
      bad("circle sizes must be strictly increasing");
    if (s.circle_means[i] <= 0.0) bad("circle means must be positive");
    if (i && !(s.circle_means[i] < s.circle_means[i - 1]))
      bad("circle means must be strictly decreasing");
  }
  if (s.freq_jitter < 0.0) bad("freq_jitter must be >= 0");
  for (std::size_t i = 0; i + 1 < s.circle_means.size(); ++i)
    if (!(s.circle_means[i] - s.freq_jitter >
          s.circle_means[i + 1] + s.freq_jitter))
      bad("rings overlap after jitter");
  if (!(s.circle_means.back() - s.freq_jitter > 0.0))
    bad("outermost ring reaches zero frequency");
  if (s.circle_sizes[0] > s.inner_pool) bad("ring 1 larger than inner pool");
  if (s.circle_sizes.size() > 1 &&
      s.circle_sizes[1] - s.circle_sizes[0] > s.mid_pool)
    bad("ring 2 larger than mid pool");
  int outer_need = s.circle_sizes.back() -
                   (s.circle_sizes.size() > 1 ? s.circle_sizes[1]
                                              : s.circle_sizes[0]);
  if (outer_need > s.outer_pool) bad("outer rings larger than outer pool");
  if (s.p_link_within < 0 || s.p_link_within > 1 || s.p_new_within < 0 ||
      s.p_new_within > 1 || s.domain_fraction < 0 || s.domain_fraction > 1)
    bad("probabilities must lie in [0, 1]");
}

}  // namespace

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
  validate(spec);
  SyntheticData data;
  Rng rng(mix_seed(spec.seed, 7));

  const int n_comms = (spec.n_egos + spec.community_size - 1) / spec.community_size;
  auto community_of = [&](int ego) { return ego / spec.community_size; };

  // pools, with an optional domain-specific prefix
  std::vector<std::vector<std::string>> inner(n_comms), mid(n_comms);
  std::vector<std::string> outer;
  auto fill_pool = [&](std::vector<std::string>& pool, const std::string& prefix,
                       int count) {
    int n_domain = static_cast<int>(spec.domain_fraction * count);
    for (int i = 0; i < count; ++i) {
      pool.push_back(tag(prefix.c_str(), i));
      data.classes[pool.back()] =
          i < n_domain ? NodeClass::DomainSpecific : NodeClass::Generic;
    }
  };
  for (int c = 0; c < n_comms; ++c) {
    fill_pool(inner[c], tag("c", c) + "_in", spec.inner_pool);
    fill_pool(mid[c], tag("c", c) + "_mid", spec.mid_pool);
  }
  fill_pool(outer, "outer", spec.outer_pool);

  std::vector<std::string> ego_label(spec.n_egos);
  for (int e = 0; e < spec.n_egos; ++e) {
    ego_label[e] = tag("ego", e);
    data.classes[ego_label[e]] = NodeClass::Ego;
  }

  const auto& sizes = spec.circle_sizes;
  const std::size_t n_rings = sizes.size();
  auto ring_freq = [&](std::size_t ring) {
    return spec.circle_means[ring] +
           rng.uniform(-spec.freq_jitter, spec.freq_jitter);
  };

  // planted rings per ego
  for (int e = 0; e < spec.n_egos; ++e) {
    int c = community_of(e);
    std::vector<std::vector<std::string>> rings(n_rings);
    auto draw = [&](const std::vector<std::string>& pool, int count,
                    std::vector<std::string>& dst) {
      for (auto i : rng.sample_indices(pool.size(), count))
        dst.push_back(pool[i]);
    };
    draw(inner[c], sizes[0], rings[0]);
    if (n_rings > 1) draw(mid[c], sizes[1] - sizes[0], rings[1]);
    if (n_rings > 2) {
      int need = sizes.back() - sizes[1];
      std::vector<std::string> chunk;
      draw(outer, need, chunk);  // distinct across all outer rings of this ego
      std::size_t taken = 0;
      for (std::size_t r = 2; r < n_rings; ++r) {
        int ring_size = sizes[r] - sizes[r - 1];
        for (int i = 0; i < ring_size; ++i) rings[r].push_back(chunk[taken++]);
      }
    }
    for (std::size_t r = 0; r < n_rings; ++r) {
      for (const auto& alter : rings[r])
        data.edges.push_back({ego_label[e], alter, ring_freq(r)});
      std::sort(rings[r].begin(), rings[r].end());
    }
    data.truth_rings[ego_label[e]] = std::move(rings);
  }

  // links live inside communities only; the e_old edge weight is an
  // innermost-ring frequency, so linked egos join each other's top circle
  std::vector<std::pair<int, int>> new_candidates;
  for (int a = 0; a < spec.n_egos; ++a) {
    for (int b = a + 1; b < spec.n_egos; ++b) {
      if (community_of(a) != community_of(b)) continue;
      if (rng.uniform01() < spec.p_link_within) {
        data.edges.push_back({ego_label[a], ego_label[b], ring_freq(0)});
        data.truth_rings[ego_label[a]][0].push_back(ego_label[b]);
        data.truth_rings[ego_label[b]][0].push_back(ego_label[a]);
      } else {
        new_candidates.emplace_back(a, b);
      }
    }
  }
  for (auto [a, b] : new_candidates)
    if (rng.uniform01() < spec.p_new_within)
      data.new_edges.emplace_back(ego_label[a], ego_label[b]);
  // a nonzero rate promises at least one new link when a candidate exists
  if (data.new_edges.empty() && spec.p_new_within > 0.0 &&
      !new_candidates.empty())
    data.new_edges.emplace_back(ego_label[new_candidates.front().first],
                                ego_label[new_candidates.front().second]);

  for (auto& [ego, rings] : data.truth_rings)
    for (auto& ring : rings) std::sort(ring.begin(), ring.end());
  return data;
}

}  // namespace circlelink
