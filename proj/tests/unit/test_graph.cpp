#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "test_support.hpp"
#include "walkrag/errors.hpp"
#include "walkrag/graph.hpp"

using namespace walkrag;
using namespace walkrag::routing;

TEST_CASE("walkable way rule") {
  using geodata::tag_map;
  CHECK(is_walkable(tag_map{{"highway", "footway"}}));
  CHECK(is_walkable(tag_map{{"highway", "steps"}}));
  CHECK(is_walkable(tag_map{{"highway", "track"}}));
  CHECK(is_walkable(tag_map{{"highway", "primary"}, {"sidewalk", "both"}}));
  CHECK(is_walkable(tag_map{{"highway", "residential"}, {"foot", "designated"}}));
  CHECK_FALSE(is_walkable(tag_map{{"highway", "residential"}}));
  CHECK_FALSE(is_walkable(tag_map{{"highway", "motorway"}}));
  CHECK_FALSE(is_walkable(tag_map{{"highway", "primary"}, {"sidewalk", "no"}}));
  CHECK_FALSE(is_walkable(tag_map{{"foot", "no"}}));
}

TEST_CASE("builder keeps the shorter parallel edge and indexes ids in order") {
  pedestrian_graph::builder b;
  b.add_node(30, testing::local_point(0, 0))
      .add_node(10, testing::local_point(100, 0))
      .add_node(20, testing::local_point(100, 100))
      .add_edge(30, 10, 150.0, "Long")
      .add_edge(10, 30, 100.0, "Short")
      .add_edge(10, 20);
  auto const g = std::move(b).build();
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.id_at(0) == 10);
  CHECK(g.id_at(2) == 30);
  auto const* e = g.find_edge(g.index_of(10), g.index_of(30));
  REQUIRE(e != nullptr);
  CHECK(e->length_m == 100.0);
  CHECK(*g.street_name(*e) == "Short");
  auto const* h = g.find_edge(g.index_of(10), g.index_of(20));
  REQUIRE(h != nullptr);
  CHECK(h->length_m == doctest::Approx(100.0).epsilon(1e-3));
  CHECK(g.street_name(*h) == nullptr);
  CHECK(g.find_edge(g.index_of(30), g.index_of(20)) == nullptr);
  CHECK_THROWS_AS(g.index_of(99), std::out_of_range);
}

TEST_CASE("builder rejects non-positive explicit lengths") {
  pedestrian_graph::builder b;
  b.add_node(1, {0, 0}).add_node(2, {0, 0.001});
  CHECK_THROWS_AS(b.add_edge(1, 2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(b.add_edge(1, 2, -5.0), std::invalid_argument);
}

TEST_CASE("coincident nodes get a tiny positive edge") {
  pedestrian_graph::builder b;
  b.add_node(1, {48.85, 2.29}).add_node(2, {48.85, 2.29}).add_edge(1, 2);
  auto const g = std::move(b).build();
  auto const* e = g.find_edge(0, 1);
  REQUIRE(e != nullptr);
  CHECK(e->length_m > 0.0);
  CHECK(e->length_m < 0.01);
}

TEST_CASE("graph from a map extract") {
  geodata::map_extract x;
  x.nodes = {{1, testing::local_point(0, 0), {}},
             {2, testing::local_point(100, 0), {}},
             {3, testing::local_point(200, 0), {}},
             {4, testing::local_point(200, 100), {}}};
  x.ways = {{10, {1, 2, 3}, {{"highway", "footway"}, {"name", "Allee"}}},
            {11, {3, 4}, {{"highway", "motorway"}}}};
  auto const g = build_pedestrian_graph(x);
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK_FALSE(g.contains(4));

  geodata::map_extract motorway_only;
  motorway_only.nodes = x.nodes;
  motorway_only.ways = {{11, {3, 4}, {{"highway", "motorway"}}}};
  CHECK_THROWS_AS(build_pedestrian_graph(motorway_only), empty_graph);
}

TEST_CASE("fixture graph matches the manifest and survives JSON") {
  auto const x = geodata::parse_map_extract_file(testing::fixture("map.osm"));
  auto const g = build_pedestrian_graph(x);
  auto const manifest = nlohmann::json::parse(testing::read_file(testing::fixture("manifest.json")));
  CHECK(g.node_count() == manifest.at("graph_nodes").get<std::size_t>());
  CHECK(g.edge_count() == manifest.at("graph_edges").get<std::size_t>());

  std::stringstream buf;
  g.write_json(buf);
  auto const back = pedestrian_graph::read_json(buf);
  REQUIRE(back.node_count() == g.node_count());
  CHECK(back.edge_count() == g.edge_count());
  for (std::uint32_t i = 0; i < g.node_count(); ++i) {
    CHECK(back.id_at(i) == g.id_at(i));
    CHECK(back.position(i) == g.position(i));
    auto const a = g.neighbors(i);
    auto const b = back.neighbors(i);
    REQUIRE(a.size() == b.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      CHECK(a[j].to == b[j].to);
      CHECK(a[j].length_m == b[j].length_m);
      CHECK(a[j].street == b[j].street);
    }
  }
}
