#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "walkrag/geo.hpp"
#include "walkrag/osm.hpp"

namespace walkrag::routing {

using geodata::node_id;

struct edge {
  std::uint32_t to = 0;  // dense node index
  double length_m = 0.0;
  std::int32_t street = -1;  // index into street_names(), -1 when unnamed
};

// Undirected, positively weighted walking network. Nodes are stored densely in
// ascending id order so index order equals id order.
class pedestrian_graph {
public:
  class builder {
  public:
    builder& add_node(node_id id, lat_lon pos);
    // Adds u-v in both directions. Parallel edges keep the shorter length.
    // Without `length_m` the haversine distance between the endpoints is used.
    builder& add_edge(node_id u, node_id v, std::optional<double> length_m = std::nullopt,
                      std::string const& street = {});
    pedestrian_graph build() &&;

  private:
    struct pending_edge {
      node_id u, v;
      std::optional<double> length_m;
      std::string street;
    };
    std::unordered_map<node_id, lat_lon> nodes_;
    std::vector<pending_edge> edges_;
  };

  std::size_t node_count() const { return ids_.size(); }
  std::size_t edge_count() const;  // undirected edges
  bool empty() const { return ids_.empty(); }

  bool contains(node_id id) const { return index_.contains(id); }
  std::uint32_t index_of(node_id id) const;  // throws std::out_of_range
  node_id id_at(std::uint32_t index) const { return ids_[index]; }
  lat_lon position(std::uint32_t index) const { return pos_[index]; }
  lat_lon position_of(node_id id) const { return pos_[index_of(id)]; }

  std::span<edge const> neighbors(std::uint32_t index) const { return adjacency_[index]; }
  std::span<node_id const> ids() const { return ids_; }

  // Shortest parallel edge between two adjacent nodes.
  edge const* find_edge(std::uint32_t u, std::uint32_t v) const;

  std::vector<std::string> const& street_names() const { return streets_; }
  std::string const* street_name(edge const& e) const;

  // {"nodes": [[id, lat, lon], ...], "edges": [[u, v, length_m, street], ...]}
  void write_json(std::ostream& out) const;
  static pedestrian_graph read_json(std::istream& in);

private:
  std::vector<node_id> ids_;
  std::vector<lat_lon> pos_;
  std::unordered_map<node_id, std::uint32_t> index_;
  std::vector<std::vector<edge>> adjacency_;
  std::vector<std::string> streets_;
};

// highway in {footway, path, pedestrian, living_street, steps, track},
// sidewalk in {left, right, both}, or foot in {yes, designated}.
bool is_walkable(geodata::tag_map const& tags);

// Keeps every walkable way; consecutive node pairs become edges weighted by
// haversine length. Throws empty_graph when nothing is walkable.
pedestrian_graph build_pedestrian_graph(geodata::map_extract const& extract);

}  // namespace walkrag::routing
