#include "walkrag/graph.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "walkrag/errors.hpp"

namespace walkrag::routing {

namespace {

// Distinct nodes can share coordinates in real extracts; edge lengths must stay
// strictly positive.
constexpr double kMinEdgeLengthM = 1e-3;

}  // namespace

pedestrian_graph::builder& pedestrian_graph::builder::add_node(node_id id, lat_lon pos) {
  nodes_[id] = pos;
  return *this;
}

pedestrian_graph::builder& pedestrian_graph::builder::add_edge(node_id u, node_id v,
                                                               std::optional<double> length_m,
                                                               std::string const& street) {
  if (length_m && !(*length_m > 0.0)) {
    throw std::invalid_argument("edge lengths must be strictly positive");
  }
  edges_.push_back({u, v, length_m, street});
  return *this;
}

pedestrian_graph pedestrian_graph::builder::build() && {
  pedestrian_graph g;
  g.ids_.reserve(nodes_.size());
  for (auto const& [id, pos] : nodes_) {
    g.ids_.push_back(id);
  }
  std::sort(g.ids_.begin(), g.ids_.end());
  g.pos_.reserve(g.ids_.size());
  for (auto i = std::uint32_t{0}; i < g.ids_.size(); ++i) {
    g.index_.emplace(g.ids_[i], i);
    g.pos_.push_back(nodes_.at(g.ids_[i]));
  }

  // Street table sorted by name so indices do not depend on insertion order.
  std::map<std::string, std::int32_t> street_index;
  for (auto const& e : edges_) {
    if (!e.street.empty()) {
      street_index.emplace(e.street, 0);
    }
  }
  for (auto& [name, index] : street_index) {
    index = static_cast<std::int32_t>(g.streets_.size());
    g.streets_.push_back(name);
  }
  std::map<std::pair<std::uint32_t, std::uint32_t>, edge> unique;
  for (auto const& e : edges_) {
    if (e.u == e.v) {
      continue;
    }
    auto const a = g.index_of(e.u);
    auto const b = g.index_of(e.v);
    auto length = e.length_m.value_or(haversine(g.pos_[a], g.pos_[b]));
    if (!(length > 0.0)) {
      length = kMinEdgeLengthM;
    }
    auto const street = e.street.empty() ? std::int32_t{-1} : street_index.at(e.street);
    auto const key = std::minmax(a, b);
    auto const [it, inserted] = unique.emplace(key, edge{0, length, street});
    if (!inserted && length < it->second.length_m) {
      it->second = edge{0, length, street};
    }
  }

  g.adjacency_.assign(g.ids_.size(), {});
  for (auto const& [key, e] : unique) {
    g.adjacency_[key.first].push_back({key.second, e.length_m, e.street});
    g.adjacency_[key.second].push_back({key.first, e.length_m, e.street});
  }
  for (auto& adj : g.adjacency_) {
    std::sort(adj.begin(), adj.end(), [](edge const& x, edge const& y) { return x.to < y.to; });
  }
  return g;
}

std::size_t pedestrian_graph::edge_count() const {
  auto total = std::size_t{0};
  for (auto const& adj : adjacency_) {
    total += adj.size();
  }
  return total / 2;
}

std::uint32_t pedestrian_graph::index_of(node_id id) const {
  auto const it = index_.find(id);
  if (it == index_.end()) {
    throw std::out_of_range("node " + std::to_string(id) + " not in graph");
  }
  return it->second;
}

edge const* pedestrian_graph::find_edge(std::uint32_t u, std::uint32_t v) const {
  auto const& adj = adjacency_[u];
  auto const it = std::lower_bound(adj.begin(), adj.end(), v,
                                   [](edge const& e, std::uint32_t to) { return e.to < to; });
  return it != adj.end() && it->to == v ? &*it : nullptr;
}

std::string const* pedestrian_graph::street_name(edge const& e) const {
  return e.street < 0 ? nullptr : &streets_[static_cast<std::size_t>(e.street)];
}

void pedestrian_graph::write_json(std::ostream& out) const {
  auto doc = nlohmann::json::object();
  auto& nodes = doc["nodes"] = nlohmann::json::array();
  for (auto i = std::size_t{0}; i < ids_.size(); ++i) {
    nodes.push_back({ids_[i], pos_[i].lat, pos_[i].lon});
  }
  auto& edges = doc["edges"] = nlohmann::json::array();
  for (auto u = std::uint32_t{0}; u < adjacency_.size(); ++u) {
    for (auto const& e : adjacency_[u]) {
      if (u < e.to) {
        edges.push_back({ids_[u], ids_[e.to], e.length_m,
                         e.street < 0 ? std::string{} : streets_[static_cast<std::size_t>(e.street)]});
      }
    }
  }
  out << doc.dump() << '\n';
}

pedestrian_graph pedestrian_graph::read_json(std::istream& in) {
  auto const doc = nlohmann::json::parse(in);
  builder b;
  for (auto const& n : doc.at("nodes")) {
    b.add_node(n.at(0).get<node_id>(), {n.at(1).get<double>(), n.at(2).get<double>()});
  }
  for (auto const& e : doc.at("edges")) {
    b.add_edge(e.at(0).get<node_id>(), e.at(1).get<node_id>(), e.at(2).get<double>(),
               e.at(3).get<std::string>());
  }
  return std::move(b).build();
}

bool is_walkable(geodata::tag_map const& tags) {
  auto const has = [&](char const* key, std::initializer_list<std::string_view> values) {
    auto const it = tags.find(key);
    return it != tags.end() && std::find(values.begin(), values.end(), it->second) != values.end();
  };
  return has("highway", {"footway", "path", "pedestrian", "living_street", "steps", "track"}) ||
         has("sidewalk", {"left", "right", "both"}) || has("foot", {"yes", "designated"});
}

pedestrian_graph build_pedestrian_graph(geodata::map_extract const& extract) {
  auto const nodes = geodata::index_nodes(extract);
  pedestrian_graph::builder b;
  auto any = false;
  for (auto const& w : extract.ways) {
    if (!is_walkable(w.tags) || w.refs.size() < 2) {
      continue;
    }
    std::string street;
    if (auto const it = w.tags.find("name"); it != w.tags.end()) {
      street = it->second;
    }
    for (auto const ref : w.refs) {
      b.add_node(ref, nodes.at(ref)->pos);
    }
    for (auto i = std::size_t{1}; i < w.refs.size(); ++i) {
      if (w.refs[i - 1] != w.refs[i]) {
        b.add_edge(w.refs[i - 1], w.refs[i], std::nullopt, street);
        any = true;
      }
    }
  }
  if (!any) {
    throw empty_graph("map extract contains no walkable way");
  }
  return std::move(b).build();
}

}  // namespace walkrag::routing
