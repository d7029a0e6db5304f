#include "walkrag/router.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <queue>

#include <nlohmann/json.hpp>

#include "walkrag/errors.hpp"

namespace walkrag::routing {

namespace {

using edge_key = std::pair<std::uint32_t, std::uint32_t>;
using penalty_overlay = std::map<edge_key, double>;

edge_key key_of(std::uint32_t a, std::uint32_t b) { return std::minmax(a, b); }

// Dijkstra over dense indices. Queue entries order by (distance, index), and
// relaxation only accepts strict improvements, so equal-length alternatives
// resolve the same way on every run.
std::optional<std::vector<std::uint32_t>> dijkstra(pedestrian_graph const& g, std::uint32_t src,
                                                   std::uint32_t dst,
                                                   penalty_overlay const& overlay) {
  constexpr auto kInf = std::numeric_limits<double>::infinity();
  constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<double> dist(g.node_count(), kInf);
  std::vector<std::uint32_t> pred(g.node_count(), kNone);
  using entry = std::pair<double, std::uint32_t>;
  std::priority_queue<entry, std::vector<entry>, std::greater<>> queue;

  dist[src] = 0.0;
  queue.emplace(0.0, src);
  while (!queue.empty()) {
    auto const [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) {
      continue;
    }
    if (u == dst) {
      break;
    }
    for (auto const& e : g.neighbors(u)) {
      auto w = e.length_m;
      if (!overlay.empty()) {
        if (auto const it = overlay.find(key_of(u, e.to)); it != overlay.end()) {
          w *= it->second;
        }
      }
      auto const nd = d + w;
      if (nd < dist[e.to]) {
        dist[e.to] = nd;
        pred[e.to] = u;
        queue.emplace(nd, e.to);
      }
    }
  }
  if (dist[dst] == kInf) {
    return std::nullopt;
  }
  std::vector<std::uint32_t> path;
  for (auto v = dst; v != kNone; v = pred[v]) {
    path.push_back(v);
    if (v == src) {
      break;
    }
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<node_id> to_ids(pedestrian_graph const& g, std::vector<std::uint32_t> const& path) {
  std::vector<node_id> ids;
  ids.reserve(path.size());
  for (auto const v : path) {
    ids.push_back(g.id_at(v));
  }
  return ids;
}

std::string compass(double bearing_deg) {
  static constexpr char const* kNames[] = {"north", "northeast", "east", "southeast",
                                           "south", "southwest", "west", "northwest"};
  auto const sector = static_cast<int>(std::floor((bearing_deg + 22.5) / 45.0)) % 8;
  return kNames[sector];
}

std::string meters_text(double m) {
  return std::to_string(static_cast<long long>(std::llround(m))) + " m";
}

std::string street_text(pedestrian_graph const& g, edge const& e) {
  auto const* name = g.street_name(e);
  return name != nullptr ? *name : std::string{"the footpath"};
}

}  // namespace

std::string_view to_string(instruction_kind kind) {
  switch (kind) {
    case instruction_kind::depart: return "Depart";
    case instruction_kind::continue_straight: return "Continue";
    case instruction_kind::turn_left: return "TurnLeft";
    case instruction_kind::turn_right: return "TurnRight";
    case instruction_kind::arrive: return "Arrive";
  }
  return "Continue";
}

instruction_kind instruction_kind_from_string(std::string_view text) {
  if (text == "Depart") return instruction_kind::depart;
  if (text == "Continue") return instruction_kind::continue_straight;
  if (text == "TurnLeft") return instruction_kind::turn_left;
  if (text == "TurnRight") return instruction_kind::turn_right;
  if (text == "Arrive") return instruction_kind::arrive;
  throw std::invalid_argument("unknown instruction kind '" + std::string{text} + "'");
}

std::vector<instruction> route_candidate::instructions() const {
  std::vector<instruction> out;
  out.reserve(segments.size() + 1);
  for (auto const& s : segments) {
    out.push_back(s.maneuver);
  }
  if (arrival) {
    out.push_back(*arrival);
  }
  return out;
}

std::vector<lat_lon> route_candidate::geometry() const {
  std::vector<lat_lon> out;
  for (auto const& s : segments) {
    auto first = s.polyline.begin();
    if (!out.empty() && first != s.polyline.end()) {
      ++first;
    }
    out.insert(out.end(), first, s.polyline.end());
  }
  return out;
}

bool route_candidate::is_continuous() const {
  if (segments.empty()) {
    return nodes.size() <= 1;
  }
  if (nodes.size() != segments.size() + 1) {
    return false;
  }
  for (auto i = std::size_t{0}; i < segments.size(); ++i) {
    if (segments[i].start != nodes[i] || segments[i].end != nodes[i + 1]) {
      return false;
    }
    if (i + 1 < segments.size() && segments[i].end != segments[i + 1].start) {
      return false;
    }
    if (segments[i].polyline.size() < 2 ||
        (i + 1 < segments.size() &&
         segments[i].polyline.back() != segments[i + 1].polyline.front())) {
      return false;
    }
  }
  return true;
}

node_id snap_to_graph(lat_lon point, pedestrian_graph const& graph, double max_snap_m) {
  if (graph.empty()) {
    throw empty_graph("cannot snap to an empty graph");
  }
  auto best = std::numeric_limits<double>::infinity();
  auto best_index = std::uint32_t{0};
  for (auto i = std::uint32_t{0}; i < graph.node_count(); ++i) {
    auto const d = haversine(point, graph.position(i));
    if (d < best) {  // ascending index == ascending id, so ties keep the lowest id
      best = d;
      best_index = i;
    }
  }
  if (best > max_snap_m) {
    throw too_far("nearest walkable node is " + meters_text(best) + " away (limit " +
                  meters_text(max_snap_m) + ")");
  }
  return graph.id_at(best_index);
}

route_candidate shortest_path(pedestrian_graph const& graph, node_id src, node_id dst) {
  auto const s = graph.index_of(src);
  auto const t = graph.index_of(dst);
  auto const path = dijkstra(graph, s, t, {});
  if (!path) {
    throw no_route("no walkable route between node " + std::to_string(src) + " and node " +
                   std::to_string(dst));
  }
  return segmentize(to_ids(graph, *path), graph);
}

std::vector<route_candidate> alternative_routes(pedestrian_graph const& graph, node_id src,
                                                node_id dst, std::size_t k,
                                                double penalty_factor) {
  auto const s = graph.index_of(src);
  auto const t = graph.index_of(dst);
  std::vector<route_candidate> routes;
  std::vector<std::vector<std::uint32_t>> seen;
  penalty_overlay overlay;
  while (routes.size() < std::max<std::size_t>(k, 1)) {
    auto const path = dijkstra(graph, s, t, overlay);
    if (!path) {
      if (routes.empty()) {
        throw no_route("no walkable route between node " + std::to_string(src) +
                       " and node " + std::to_string(dst));
      }
      break;
    }
    if (std::find(seen.begin(), seen.end(), *path) != seen.end()) {
      break;
    }
    seen.push_back(*path);
    routes.push_back(segmentize(to_ids(graph, *path), graph));
    for (auto i = std::size_t{1}; i < path->size(); ++i) {
      auto const [it, inserted] = overlay.emplace(key_of((*path)[i - 1], (*path)[i]), penalty_factor);
      if (!inserted) {
        it->second *= penalty_factor;
      }
    }
  }
  return routes;
}

instruction_kind classify_turn(double change) {
  if (change >= -30.0 && change <= 30.0) {
    return instruction_kind::continue_straight;
  }
  if (change >= -150.0 && change < -30.0) {
    return instruction_kind::turn_left;
  }
  if (change > 30.0 && change <= 150.0) {
    return instruction_kind::turn_right;
  }
  return instruction_kind::continue_straight;  // U-turn
}

route_candidate segmentize(std::vector<node_id> const& nodes, pedestrian_graph const& graph) {
  route_candidate route;
  route.nodes = nodes;
  if (nodes.size() < 2) {
    return route;
  }

  auto prev_bearing = 0.0;
  for (auto i = std::size_t{1}; i < nodes.size(); ++i) {
    auto const u = graph.index_of(nodes[i - 1]);
    auto const v = graph.index_of(nodes[i]);
    auto const* e = graph.find_edge(u, v);
    if (e == nullptr) {
      throw no_route("nodes " + std::to_string(nodes[i - 1]) + " and " +
                     std::to_string(nodes[i]) + " are not adjacent");
    }
    segment seg;
    seg.start = nodes[i - 1];
    seg.end = nodes[i];
    seg.polyline = {graph.position(u), graph.position(v)};
    seg.length_m = e->length_m;

    auto const heading = bearing(seg.polyline.front(), seg.polyline.back());
    auto const street = street_text(graph, *e);
    auto const dist = meters_text(seg.length_m);
    auto& m = seg.maneuver;
    m.distance_m = seg.length_m;
    if (i == 1) {
      m.kind = instruction_kind::depart;
      m.text = "Head " + compass(heading) + " on " + street + " for " + dist;
    } else {
      auto const change = bearing_change(prev_bearing, heading);
      m.kind = classify_turn(change);
      switch (m.kind) {
        case instruction_kind::turn_left:
          m.text = "Turn left onto " + street + " and walk " + dist;
          break;
        case instruction_kind::turn_right:
          m.text = "Turn right onto " + street + " and walk " + dist;
          break;
        default:
          m.text = std::abs(change) > 150.0
                       ? "Make a U-turn and continue on " + street + " for " + dist
                       : "Continue on " + street + " for " + dist;
      }
    }
    prev_bearing = heading;
    route.total_length_m += seg.length_m;
    route.segments.push_back(std::move(seg));
  }
  route.arrival = instruction{instruction_kind::arrive, "Arrive at your destination", 0.0};
  return route;
}

nlohmann::json to_geojson_linestring(route_candidate const& route) {
  auto coords = nlohmann::json::array();
  for (auto const& p : route.geometry()) {
    coords.push_back({p.lon, p.lat});
  }
  return {{"type", "LineString"}, {"coordinates", std::move(coords)}};
}

}  // namespace walkrag::routing
