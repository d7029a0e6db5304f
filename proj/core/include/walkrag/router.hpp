#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "walkrag/graph.hpp"

namespace walkrag::routing {

enum class instruction_kind { depart, continue_straight, turn_left, turn_right, arrive };

std::string_view to_string(instruction_kind kind);
instruction_kind instruction_kind_from_string(std::string_view text);

struct instruction {
  instruction_kind kind = instruction_kind::continue_straight;
  std::string text;
  double distance_m = 0.0;

  friend bool operator==(instruction const&, instruction const&) = default;
};

struct segment {
  node_id start = 0;
  node_id end = 0;
  std::vector<lat_lon> polyline;  // start position .. end position
  double length_m = 0.0;
  instruction maneuver;  // what to do when entering this segment
};

struct route_candidate {
  std::vector<node_id> nodes;
  std::vector<segment> segments;
  double total_length_m = 0.0;
  std::optional<instruction> arrival;  // absent for zero-segment routes

  // Depart .. Arrive, one entry per segment plus the arrival.
  std::vector<instruction> instructions() const;
  // Route vertices in travel order.
  std::vector<lat_lon> geometry() const;
  // Segment i ends where segment i+1 starts, and nodes match the segments.
  bool is_continuous() const;
};

struct routing_options {
  std::size_t alternatives = 3;
  double penalty_factor = 1.4;
  double max_snap_m = 500.0;
};

// Nearest node by haversine distance, ties to the lowest id. Throws too_far
// beyond `max_snap_m` and empty_graph on an empty graph.
node_id snap_to_graph(lat_lon point, pedestrian_graph const& graph, double max_snap_m = 500.0);

// Minimum-length path as a segmentized route; throws no_route.
route_candidate shortest_path(pedestrian_graph const& graph, node_id src, node_id dst);

// Penalty method: after each accepted route its edges' weights are multiplied
// by `penalty_factor` (on a private overlay) and the search re-runs. Stops at
// `k` routes or at the first repeated node sequence. The first entry is the
// shortest path.
std::vector<route_candidate> alternative_routes(pedestrian_graph const& graph, node_id src,
                                                node_id dst, std::size_t k = 3,
                                                double penalty_factor = 1.4);

// Bearing change within +-30 deg -> continue, -150..-30 -> left, 30..150 ->
// right, beyond +-150 -> continue with a U-turn note.
instruction_kind classify_turn(double bearing_change_deg);

// One segment per consecutive node pair, with Depart on the first segment, a
// turn instruction on each following one, and the Arrive instruction.
route_candidate segmentize(std::vector<node_id> const& nodes, pedestrian_graph const& graph);

// GeoJSON LineString geometry ([lon, lat] pairs, origin first).
nlohmann::json to_geojson_linestring(route_candidate const& route);

}  // namespace walkrag::routing
