#include <doctest.h>

#include <algorithm>
#include <random>

#include "test_support.hpp"
#include "walkrag/enrichment.hpp"

using namespace walkrag;
using namespace walkrag::enrichment;

namespace {

geodata::feature_record poi(lat_lon pos, int id, std::string category, std::optional<std::string> name) {
  geodata::feature_record f;
  f.feature_id = "node/" + std::to_string(id);
  f.kind = geodata::feature_kind::poi;
  f.pos = pos;
  f.category = std::move(category);
  f.name = std::move(name);
  return f;
}

}  // namespace

TEST_CASE("R-tree query equals a linear scan") {
  std::mt19937_64 rng{3};
  std::uniform_real_distribution<double> lat{48.80, 48.90};
  std::uniform_real_distribution<double> lon{2.25, 2.40};
  geodata::feature_set fs;
  for (int i = 0; i < 1000; ++i) {
    fs.push_back(poi({lat(rng), lon(rng)}, i, "museum", std::nullopt));
  }
  // A few points exactly on box edges.
  fs.push_back(poi({48.85, 2.30}, 5000, "museum", std::nullopt));
  auto const index = build_spatial_index(fs);
  CHECK(index.size() == fs.size());

  for (int q = 0; q < 100; ++q) {
    auto a = lat_lon{lat(rng), lon(rng)};
    auto b = lat_lon{lat(rng), lon(rng)};
    bbox box{{std::min(a.lat, b.lat), std::min(a.lon, b.lon)}, {std::max(a.lat, b.lat), std::max(a.lon, b.lon)}};
    if (q == 0) {
      box = {{48.85, 2.29}, {48.86, 2.30}};
    }
    std::vector<std::size_t> expected;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      auto const& p = fs[i].pos;
      if (p.lat >= box.min.lat && p.lat <= box.max.lat && p.lon >= box.min.lon && p.lon <= box.max.lon) {
        expected.push_back(i);
      }
    }
    CHECK(index.query(box) == expected);
  }
}

TEST_CASE("corridor membership") {
  std::vector<std::vector<lat_lon>> segs{{testing::local_point(0, 0), testing::local_point(100, 0)},
                                          {testing::local_point(100, 0), testing::local_point(100, 100)}};
  corridor const c{segs, 50.0};
  CHECK(c.contains(testing::local_point(50, 49)));
  CHECK_FALSE(c.contains(testing::local_point(50, -51)));
  CHECK(c.contains(testing::local_point(145, 50)));
  CHECK_FALSE(c.contains(testing::local_point(-60, 0)));
  auto const [seg, d] = c.nearest_segment(testing::local_point(140, 60));
  CHECK(seg == 1);
  CHECK(d == doctest::Approx(40.0).epsilon(1e-3));
  // The shared vertex is equally near to both; the earlier segment wins.
  CHECK(c.nearest_segment(testing::local_point(100, 0)).first == 0);
  CHECK_THROWS_AS(corridor(segs, 0.0), std::invalid_argument);
  CHECK_FALSE(corridor({}, 10.0).bounds().has_value());
}

TEST_CASE("spatial join attaches POIs to the nearest segment") {
  routing::pedestrian_graph::builder b;
  b.add_node(1, testing::local_point(0, 0))
      .add_node(2, testing::local_point(300, 0))
      .add_node(3, testing::local_point(300, 300))
      .add_edge(1, 2)
      .add_edge(2, 3);
  auto const g = std::move(b).build();
  auto const route = routing::segmentize({1, 2, 3}, g);

  geodata::feature_set fs{
      poi(testing::local_point(100, 30), 1, "museum", "Musee A"),
      poi(testing::local_point(280, 200), 2, "cafe", "Cafe B"),
      poi(testing::local_point(100, 400), 3, "museum", "Far Museum"),
      poi(testing::local_point(150, -10), 4, "artwork", std::nullopt),
  };
  geodata::feature_record tree;
  tree.feature_id = "node/9";
  tree.kind = geodata::feature_kind::green_area;
  tree.pos = testing::local_point(50, 0);
  fs.push_back(tree);
  auto const index = build_spatial_index(fs);
  auto const c = buffer_route(route, 200.0);

  auto const all = spatial_join(c, index, {});
  REQUIRE(all.size() == 2);
  REQUIRE(all[0].size() == 2);
  CHECK(all[0][0].name == "unnamed artwork");
  CHECK(all[0][0].category == "artwork");
  CHECK(all[0][0].distance_m == doctest::Approx(10.0).epsilon(1e-3));
  CHECK(all[0][1].name == "Musee A");
  REQUIRE(all[1].size() == 1);
  CHECK(all[1][0].name == "Cafe B");

  preference_filter museums;
  museums.categories = {"museum"};
  auto const only = spatial_join(c, index, museums);
  CHECK(only[0].size() == 1);
  CHECK(only[0][0].name == "Musee A");
  CHECK(only[1].empty());
}

TEST_CASE("spatial join equals brute force on random routes") {
  std::mt19937_64 rng{17};
  std::uniform_real_distribution<double> coord{-2000.0, 2000.0};
  geodata::feature_set fs;
  std::vector<std::string> const cats{"museum", "cafe", "viewpoint"};
  for (int i = 0; i < 1000; ++i) {
    fs.push_back(poi(testing::local_point(coord(rng), coord(rng)), i, cats[i % 3], "P" + std::to_string(i)));
  }
  auto const index = build_spatial_index(fs);
  for (int r = 0; r < 20; ++r) {
    std::vector<std::vector<lat_lon>> segs;
    auto prev = testing::local_point(coord(rng), coord(rng));
    auto const n = 1 + rng() % 8;
    for (std::size_t i = 0; i < n; ++i) {
      auto next = testing::local_point(coord(rng), coord(rng));
      segs.push_back({prev, next});
      prev = next;
    }
    auto const buffer = 50.0 + static_cast<double>(rng() % 250);
    corridor const c{segs, buffer};
    auto const got = spatial_join(c, index, {});

    std::vector<std::vector<std::size_t>> want(segs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
      std::size_t best = 0;
      double best_d = 1e300;
      for (std::size_t s = 0; s < segs.size(); ++s) {
        auto const d = point_segment_distance(fs[i].pos, segs[s][0], segs[s][1]);
        if (d < best_d) {
          best_d = d;
          best = s;
        }
      }
      if (best_d <= buffer) {
        want[best].push_back(i);
      }
    }
    for (std::size_t s = 0; s < segs.size(); ++s) {
      std::vector<std::size_t> ids;
      for (auto const& a : got[s]) {
        ids.push_back(a.feature);
      }
      std::sort(ids.begin(), ids.end());
      CHECK(ids == want[s]);
    }
  }
}
