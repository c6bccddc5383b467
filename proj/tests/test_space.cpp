#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "hyperrho/rng.hpp"
#include "hyperrho/space.hpp"

using namespace hyperrho;

TEST_CASE("1-D grid builder: cell centers and weights") {
  const auto s = MetricMeasureSpace::euclidean_grid(1, 2);
  REQUIRE(s.size() == 2);
  CHECK(s.point(0)[0] == doctest::Approx(0.25));
  CHECK(s.point(1)[0] == doctest::Approx(0.75));
  CHECK(s.weight(0) == doctest::Approx(0.5));
  CHECK(s.kappa() == 1.0);
  CHECK(s.eta() == 1.0);
}

TEST_CASE("grid builder: partition of unity") {
  const auto s = MetricMeasureSpace::euclidean_grid(1, 4);
  double total = 0.0;
  for (int i = 0; i < s.size(); ++i) total += s.weight(i);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.total_measure() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("2-D grid builder: counts and uniform weights") {
  const auto s = MetricMeasureSpace::euclidean_grid(2, 8);
  REQUIRE(s.size() == 64);
  for (int i = 0; i < s.size(); ++i) CHECK(s.weight(i) == doctest::Approx(1.0 / 64));
  CHECK(s.eta() == 2.0);
}

TEST_CASE("grid builder rejects bad parameters") {
  CHECK_THROWS_AS(MetricMeasureSpace::euclidean_grid(0, 8), std::invalid_argument);
  CHECK_THROWS_AS(MetricMeasureSpace::euclidean_grid(4, 8), std::invalid_argument);
  CHECK_THROWS_AS(MetricMeasureSpace::euclidean_grid(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(MetricMeasureSpace::euclidean_grid(1, 8, 0.0),
                  std::invalid_argument);
}

TEST_CASE("snowflake distance is the Euclidean power") {
  const auto s = MetricMeasureSpace::snowflake_line(3, 2.0);
  CHECK(s.distance_points({0.0, 0, 0}, {1.0, 0, 0}) == doctest::Approx(1.0));
  CHECK(s.distance_points({0.0, 0, 0}, {0.5, 0, 0}) == doctest::Approx(0.25));
  CHECK(s.kappa() == doctest::Approx(2.0));
  CHECK(s.eta() == doctest::Approx(0.5));
  CHECK_THROWS_AS(MetricMeasureSpace::snowflake_line(8, 1.0), std::invalid_argument);
}

TEST_CASE("snowflake ball measure matches the 2 r^(1/2) law") {
  const auto s = MetricMeasureSpace::snowflake_line(512, 2.0);
  const int x = 256;  // interior
  for (double r : {0.01, 0.04, 0.09}) {
    const BallStats b = s.ball(x, r);
    // Ball of d-radius r is the Euclidean interval of half-width sqrt(r).
    CHECK(b.measure == doctest::Approx(2.0 * std::sqrt(r)).epsilon(0.02));
  }
}

TEST_CASE("cantor builder: representatives, measure, dimension") {
  const auto s1 = MetricMeasureSpace::cantor_dust(1);
  REQUIRE(s1.size() == 2);
  CHECK(s1.weight(0) == doctest::Approx(0.5));
  CHECK(s1.eta() == doctest::Approx(std::log(2.0) / std::log(3.0)));

  const auto s2 = MetricMeasureSpace::cantor_dust(2);
  CHECK(s2.size() == 4);
  CHECK(s2.total_measure() == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(MetricMeasureSpace::cantor_dust(0), std::invalid_argument);
  CHECK_THROWS_AS(MetricMeasureSpace::cantor_dust(3, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(MetricMeasureSpace::cantor_dust(3, 0.0), std::invalid_argument);
}

TEST_CASE("quasi-triangle inequality on seeded triples") {
  for (const char* cfg : {"grid1d:128", "grid2d:16", "snowflake:128,2", "cantor:6"}) {
    const auto s = MetricMeasureSpace::from_config(cfg);
    Rng rng(42);
    for (int t = 0; t < 2000; ++t) {
      const int x = rng.index(s.size()), y = rng.index(s.size()),
                z = rng.index(s.size());
      const double lhs = s.distance(x, z);
      const double rhs = s.kappa() * (s.distance(x, y) + s.distance(y, z));
      CHECK(lhs <= rhs * (1.0 + 1e-12));
      CHECK(s.distance(x, y) == s.distance(y, x));
    }
  }
}

TEST_CASE("ball stats: whole space, singleton, interval counting") {
  const auto small = MetricMeasureSpace::euclidean_grid(1, 4);
  CHECK(small.ball(1, 10.0).measure == doctest::Approx(1.0));
  CHECK(small.ball(1, small.min_positive_distance() / 2).count == 1);
  CHECK(small.ball(1, small.min_positive_distance() / 2).measure ==
        doctest::Approx(small.weight(1)));
  CHECK_THROWS_AS(small.ball(1, 0.0), std::invalid_argument);

  const auto s = MetricMeasureSpace::euclidean_grid(1, 512);
  const BallStats b = s.ball(256, 0.25);
  CHECK(b.measure >= 0.5 * (1.0 - 2.0 / 512));
  CHECK(b.measure <= 0.5 * (1.0 + 2.0 / 512));
}

TEST_CASE("ball measure is nondecreasing in the radius") {
  const auto s = MetricMeasureSpace::from_config("cantor:6");
  double prev = 0.0;
  for (double r = 0.01; r < 1.5; r += 0.07) {
    const double m = s.ball(10, r).measure;
    CHECK(m >= prev);
    prev = m;
  }
}

TEST_CASE("interior Ahlfors bracket with stored constants (grids)") {
  const auto s = MetricMeasureSpace::euclidean_grid(1, 512);
  for (int x : s.interior_points()) {
    for (double r : {0.02, 0.1, 0.25}) {
      const double m = s.ball(x, r).measure;
      CHECK(m >= s.ahlfors_lower() * s.radius_minus_cell(r));
      CHECK(m <= s.ahlfors_upper() * s.radius_plus_cell(r));
    }
    break;  // one representative center plus the pooled fit below
  }
}

TEST_CASE("ahlfors_estimate recovers the nominal dimension") {
  struct Case {
    const char* cfg;
    double eta;
  };
  for (const Case& c : {Case{"grid1d:512", 1.0}, Case{"snowflake:512,2", 0.5},
                        Case{"cantor:9", std::log(2.0) / std::log(3.0)}}) {
    const auto s = MetricMeasureSpace::from_config(c.cfg);
    const auto fit = ahlfors_estimate(s, 5, default_fit_radii(s, 8));
    CHECK_MESSAGE(std::fabs(fit.eta_hat - c.eta) <= 0.05, c.cfg,
                  " eta_hat=", fit.eta_hat);
    CHECK(fit.a_hat > 0.0);
    CHECK(fit.A_hat >= fit.a_hat);
    CHECK_FALSE(fit.degenerate);
  }
}

TEST_CASE("ahlfors_estimate rejects starved inputs") {
  const auto s = MetricMeasureSpace::euclidean_grid(1, 64);
  CHECK_THROWS_AS(ahlfors_estimate(s, 3, {0.1, 0.2}), std::invalid_argument);
}

TEST_CASE("config strings round-trip through from_config") {
  for (const char* cfg :
       {"grid1d:64", "grid2d:16", "snowflake:64,2", "cantor:5", "cantor:5,0.25"}) {
    const auto s = MetricMeasureSpace::from_config(cfg);
    const auto again = MetricMeasureSpace::from_config(s.config_string());
    CHECK(again.size() == s.size());
    CHECK(again.eta() == s.eta());
  }
  CHECK_THROWS_AS(MetricMeasureSpace::from_config("nope:1"), std::invalid_argument);
  CHECK_THROWS_AS(MetricMeasureSpace::from_config(""), std::invalid_argument);
  CHECK_THROWS_AS(MetricMeasureSpace::from_config("grid1d:one"),
                  std::invalid_argument);
}

TEST_CASE("grid2d extent option") {
  const auto s = MetricMeasureSpace::from_config("grid2d:8,extent=2");
  CHECK(s.extent() == doctest::Approx(2.0));
  CHECK(s.total_measure() == doctest::Approx(4.0));
}
