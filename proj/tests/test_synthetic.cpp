#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "circlelink/errors.hpp"
#include "circlelink/synthetic.hpp"

using namespace circlelink;

namespace {

int ego_index(const std::string& label) {
  REQUIRE(label.rfind("ego", 0) == 0);
  return std::stoi(label.substr(3));
}

std::string community_prefix(int ego_idx, int community_size) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "c%04d", ego_idx / community_size);
  return buf;
}

std::pair<std::string, std::string> canon(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return {a, b};
}

}  // namespace

TEST_CASE("generator is deterministic in the spec seed") {
  SyntheticSpec spec;
  auto a = generate_synthetic(spec);
  auto b = generate_synthetic(spec);
  CHECK(a.classes == b.classes);
  CHECK(a.new_edges == b.new_edges);
  CHECK(a.truth_rings == b.truth_rings);
  REQUIRE(a.edges.size() == b.edges.size());
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    CHECK(a.edges[i].src == b.edges[i].src);
    CHECK(a.edges[i].dst == b.edges[i].dst);
    CHECK(a.edges[i].weight == b.edges[i].weight);
  }

  spec.seed = 2;
  auto c = generate_synthetic(spec);
  bool differs = c.edges.size() != a.edges.size();
  for (std::size_t i = 0; !differs && i < a.edges.size(); ++i)
    differs = a.edges[i].dst != c.edges[i].dst ||
              a.edges[i].weight != c.edges[i].weight;
  CHECK(differs);
}

TEST_CASE("planted rings have the spec sizes, pools and frequency bands") {
  SyntheticSpec spec;  // 48 egos, communities of 6, sizes 2/5/15/50
  auto data = generate_synthetic(spec);

  // 48 egos + 8 communities x (3 inner + 6 mid) + 120 outer alters
  CHECK(data.classes.size() == 48 + 8 * 9 + 120);
  int egos_seen = 0;
  for (const auto& [label, cls] : data.classes) {
    if (label.rfind("ego", 0) == 0) {
      CHECK(cls == NodeClass::Ego);
      ++egos_seen;
    } else {
      CHECK(cls == NodeClass::Generic);  // domain_fraction = 0
    }
  }
  CHECK(egos_seen == 48);
  REQUIRE(data.truth_rings.size() == 48);

  // ego -> number of incident e_old ego-ego links
  std::map<std::string, int> link_count;
  for (const auto& e : data.edges)
    if (e.dst.rfind("ego", 0) == 0) {
      ++link_count[e.src];
      ++link_count[e.dst];
    }

  for (const auto& [ego, rings] : data.truth_rings) {
    REQUIRE(rings.size() == 4);
    // ring 0 holds the 2 planted alters plus any linked egos
    CHECK(rings[0].size() == 2 + static_cast<std::size_t>(link_count[ego]));
    CHECK(rings[1].size() == 3);    // 5 - 2
    CHECK(rings[2].size() == 10);   // 15 - 5
    CHECK(rings[3].size() == 35);   // 50 - 15

    std::string comm = community_prefix(ego_index(ego), 6);
    std::set<std::string> seen;
    for (std::size_t r = 0; r < rings.size(); ++r) {
      CHECK(std::is_sorted(rings[r].begin(), rings[r].end()));
      for (const auto& alter : rings[r]) {
        CHECK(seen.insert(alter).second);  // rings are disjoint
        if (alter.rfind("ego", 0) == 0) {
          CHECK(r == 0);  // linked egos only ever join the top ring
          CHECK(ego_index(alter) / 6 == ego_index(ego) / 6);
        } else if (r == 0) {
          CHECK(alter.rfind(comm + "_in", 0) == 0);
        } else if (r == 1) {
          CHECK(alter.rfind(comm + "_mid", 0) == 0);
        } else {
          CHECK(alter.rfind("outer", 0) == 0);
        }
      }
    }
  }

  // every edge weight sits inside its ring's jitter band
  for (const auto& e : data.edges) {
    const auto& rings = data.truth_rings.at(e.src);
    int ring = -1;
    for (std::size_t r = 0; r < rings.size(); ++r)
      if (std::binary_search(rings[r].begin(), rings[r].end(), e.dst))
        ring = static_cast<int>(r);
    REQUIRE(ring >= 0);
    CHECK(e.weight >= spec.circle_means[ring] - spec.freq_jitter);
    CHECK(e.weight <= spec.circle_means[ring] + spec.freq_jitter);
  }
}

TEST_CASE("links and injected links stay inside communities and disjoint") {
  SyntheticSpec spec;
  spec.seed = 11;
  auto data = generate_synthetic(spec);

  std::set<std::pair<std::string, std::string>> old_pairs;
  for (const auto& e : data.edges)
    if (e.src.rfind("ego", 0) == 0 && e.dst.rfind("ego", 0) == 0) {
      CHECK(ego_index(e.src) / 6 == ego_index(e.dst) / 6);
      old_pairs.insert(canon(e.src, e.dst));
    }
  CHECK(!old_pairs.empty());

  CHECK(!data.new_edges.empty());
  for (const auto& [a, b] : data.new_edges) {
    CHECK(ego_index(a) / 6 == ego_index(b) / 6);
    CHECK(old_pairs.count(canon(a, b)) == 0);

    // same community => overlapping inner draws (2 + 2 > 3 pool slots), so
    // an injected pair always shares a planted top-ring alter
    const auto& ra = data.truth_rings.at(a)[0];
    const auto& rb = data.truth_rings.at(b)[0];
    std::vector<std::string> shared;
    std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(),
                          std::back_inserter(shared));
    bool shares_pool_alter = false;
    for (const auto& s : shared)
      if (s.rfind("ego", 0) != 0) shares_pool_alter = true;
    CHECK(shares_pool_alter);
  }
}

TEST_CASE("a zero injection rate yields no new edges") {
  SyntheticSpec spec;
  spec.p_new_within = 0.0;
  CHECK(generate_synthetic(spec).new_edges.empty());
}

TEST_CASE("a single-ego spec plants plain rings with no links") {
  SyntheticSpec spec;
  spec.n_egos = 1;
  auto data = generate_synthetic(spec);
  CHECK(data.new_edges.empty());
  REQUIRE(data.truth_rings.size() == 1);
  const auto& rings = data.truth_rings.at("ego0000");
  REQUIRE(rings.size() == 4);
  CHECK(rings[0].size() == 2);
  CHECK(rings[3].size() == 35);
  CHECK(data.edges.size() == 50);  // cumulative outermost size
}

TEST_CASE("domain_fraction splits pool alters into classes") {
  SyntheticSpec spec;
  spec.domain_fraction = 0.5;
  auto data = generate_synthetic(spec);
  int domain = 0, generic = 0;
  for (const auto& [label, cls] : data.classes) {
    if (cls == NodeClass::DomainSpecific) ++domain;
    if (cls == NodeClass::Generic) ++generic;
  }
  // per community: 1 of 3 inner, 3 of 6 mid; plus 60 of 120 outer
  CHECK(domain == 8 * (1 + 3) + 60);
  CHECK(generic == 8 * (2 + 3) + 60);
}

TEST_CASE("infeasible specs are rejected") {
  auto reject = [](auto mutate) {
    SyntheticSpec spec;
    mutate(spec);
    CHECK_THROWS_AS(generate_synthetic(spec), InfeasibleSpec);
  };
  reject([](SyntheticSpec& s) { s.n_egos = 0; });
  reject([](SyntheticSpec& s) { s.community_size = 1; });
  reject([](SyntheticSpec& s) { s.circle_sizes = {}; s.circle_means = {}; });
  reject([](SyntheticSpec& s) { s.circle_sizes = {2, 5}; });  // not parallel
  reject([](SyntheticSpec& s) { s.circle_sizes = {5, 5, 15, 50}; });
  reject([](SyntheticSpec& s) { s.circle_means = {48, 48, 5.3, 1.8}; });
  reject([](SyntheticSpec& s) { s.circle_means = {48, 16, 5.3, -1.0}; });
  reject([](SyntheticSpec& s) { s.freq_jitter = -0.5; });
  // adjacent rings overlap once the jitter is applied
  reject([](SyntheticSpec& s) { s.circle_means = {48, 16, 2.0, 1.9}; });
  reject([](SyntheticSpec& s) { s.freq_jitter = 2.0; });
  reject([](SyntheticSpec& s) { s.inner_pool = 1; });
  reject([](SyntheticSpec& s) { s.mid_pool = 2; });
  reject([](SyntheticSpec& s) { s.outer_pool = 30; });
  reject([](SyntheticSpec& s) { s.p_link_within = 1.5; });
  reject([](SyntheticSpec& s) { s.p_new_within = -0.1; });
  reject([](SyntheticSpec& s) { s.domain_fraction = 2.0; });
}
