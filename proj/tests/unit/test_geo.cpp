#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "test_support.hpp"
#include "walkrag/geo.hpp"

using namespace walkrag;

TEST_CASE("haversine of one degree of latitude") {
  // R * pi / 180 along a meridian.
  auto const d = haversine({0.0, 0.0}, {1.0, 0.0});
  CHECK(std::abs(d - 6371000.0 * std::numbers::pi / 180.0) < 1e-6);
  CHECK(std::abs(d - 111195.0) <= 1.0);
}

TEST_CASE("haversine basics") {
  lat_lon const a{48.8584, 2.2945};
  lat_lon const b{48.8606, 2.3376};
  CHECK(haversine(a, a) == 0.0);
  CHECK(haversine(a, b) == doctest::Approx(haversine(b, a)));
  // Antipodes: half the circumference.
  CHECK(haversine({0, 0}, {0, 180}) == doctest::Approx(kEarthRadiusM * std::numbers::pi));
}

TEST_CASE("bearing and bearing change") {
  CHECK(bearing({0, 0}, {1, 0}) == doctest::Approx(0.0));
  CHECK(bearing({0, 0}, {0, 1}) == doctest::Approx(90.0));
  CHECK(bearing({0, 0}, {-1, 0}) == doctest::Approx(180.0));
  CHECK(bearing({0, 0}, {0, -1}) == doctest::Approx(270.0));

  CHECK(bearing_change(350.0, 10.0) == doctest::Approx(20.0));
  CHECK(bearing_change(10.0, 350.0) == doctest::Approx(-20.0));
  CHECK(bearing_change(0.0, 180.0) == doctest::Approx(180.0));
  CHECK(bearing_change(180.0, 0.0) == doctest::Approx(180.0));
  CHECK(bearing_change(90.0, 0.0) == doctest::Approx(-90.0));
}

TEST_CASE("closest point on a segment") {
  auto const a = testing::local_point(0, 0);
  auto const b = testing::local_point(100, 0);

  SUBCASE("projection falls inside") {
    auto const p = testing::local_point(40, 30);
    CHECK(point_segment_distance(p, a, b) == doctest::Approx(30.0).epsilon(1e-3));
  }
  SUBCASE("projection clamps to an endpoint") {
    auto const p = testing::local_point(-30, 40);
    CHECK(point_segment_distance(p, a, b) == doctest::Approx(50.0).epsilon(1e-3));
  }
  SUBCASE("degenerate segment") {
    auto const p = testing::local_point(3, 4);
    CHECK(point_segment_distance(p, a, a) == doctest::Approx(5.0).epsilon(1e-3));
  }
}

TEST_CASE("point to polyline distance never exceeds any vertex distance") {
  std::mt19937_64 rng{7};
  std::uniform_real_distribution<double> u{-500.0, 500.0};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<lat_lon> line;
    for (int i = 0; i < 5; ++i) {
      line.push_back(testing::local_point(u(rng), u(rng)));
    }
    auto const p = testing::local_point(u(rng), u(rng));
    auto const d = point_polyline_distance(p, line);
    for (auto const& v : line) {
      CHECK(d <= haversine(p, v) + 1e-6);
    }
  }
  CHECK(std::isinf(point_polyline_distance({0, 0}, {})));
}

TEST_CASE("polyline midpoint is length weighted") {
  std::vector<lat_lon> const line{testing::local_point(0, 0), testing::local_point(100, 0),
                                  testing::local_point(100, 300)};
  auto const mid = polyline_midpoint(line);
  // Total 400 m; halfway is 100 m up the second leg.
  CHECK(haversine(mid, testing::local_point(100, 100)) < 0.5);
}

TEST_CASE("meter to degree conversions round trip through haversine") {
  auto const dlat = meters_to_lat_degrees(250.0);
  CHECK(haversine({48.85, 2.29}, {48.85 + dlat, 2.29}) == doctest::Approx(250.0).epsilon(1e-9));
  auto const dlon = meters_to_lon_degrees(250.0, 48.85);
  // Along a parallel the great circle is slightly shorter than the parallel arc.
  auto const d = haversine({48.85, 2.29}, {48.85, 2.29 + dlon});
  CHECK(d <= 250.0);
  CHECK(d > 249.9);
}
