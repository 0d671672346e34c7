#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "circlelink/bench.hpp"

using namespace circlelink;

TEST_CASE("loglog_slope recovers the exponent of a power law") {
  std::vector<double> x{10, 20, 40, 80, 160};
  auto power = [&](double k, double c) {
    std::vector<double> y;
    for (double v : x) y.push_back(c * std::pow(v, k));
    return y;
  };
  CHECK(loglog_slope(x, power(1.0, 3.0)) == doctest::Approx(1.0));
  CHECK(loglog_slope(x, power(2.0, 0.01)) == doctest::Approx(2.0));
  CHECK(loglog_slope(x, power(0.5, 7.0)) == doctest::Approx(0.5));
  // constant cost: slope 0 no matter the scale
  CHECK(loglog_slope(x, power(0.0, 42.0)) == doctest::Approx(0.0));

  CHECK_THROWS_AS(loglog_slope({1.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(loglog_slope({1.0, 2.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("bench_scaling fills the table, the ladder and the slopes") {
  auto report = bench_scaling({12, 24}, 1, 9);

  REQUIRE(report.points.size() == 2);
  for (const auto& p : report.points) {
    CHECK(p.n_edges > 0);
    CHECK(p.train_pairs > 0);
    CHECK(p.ego_extract_ms > 0.0);
    CHECK(p.allpairs_all_ms > 0.0);
    CHECK(p.allpairs_c1_ms > 0.0);
    CHECK(p.features_ms > 0.0);
  }
  CHECK(report.points[0].n_egos == 12);
  CHECK(report.points[1].n_egos == 24);

  // ladder: strictly increasing window sizes on the largest instance,
  // topping out at its full training-pair pool
  REQUIRE(report.feature_ladder.size() >= 2);
  for (std::size_t i = 1; i < report.feature_ladder.size(); ++i)
    CHECK(report.feature_ladder[i].first > report.feature_ladder[i - 1].first);
  CHECK(report.feature_ladder.back().first == report.points[1].train_pairs);
  for (const auto& [m, ms] : report.feature_ladder) {
    CHECK(m > 0);
    CHECK(ms > 0.0);
  }

  CHECK(std::isfinite(report.slope_ego_extract));
  CHECK(std::isfinite(report.slope_allpairs));
  CHECK(std::isfinite(report.slope_features));

  auto csv = bench_csv(report);
  CHECK(csv.find("n_egos,n_edges,train_pairs,") == 0);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 3);  // header + one row per size
}

TEST_CASE("bench_scaling rejects bad requests") {
  CHECK_THROWS_AS(bench_scaling({24}, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(bench_scaling({24, 12}, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(bench_scaling({12, 12}, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(bench_scaling({12, 24}, 0, 1), std::invalid_argument);
}
