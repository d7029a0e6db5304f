#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "walkrag/geo.hpp"

namespace walkrag::geodata {

using node_id = std::int64_t;
using tag_map = std::map<std::string, std::string>;

struct osm_node {
  node_id id = 0;
  lat_lon pos;
  tag_map tags;

  friend bool operator==(osm_node const&, osm_node const&) = default;
};

struct osm_way {
  std::int64_t id = 0;
  std::vector<node_id> refs;
  tag_map tags;

  friend bool operator==(osm_way const&, osm_way const&) = default;
};

// Raw entities of an OSM-XML extract, in document order. Use `index_nodes`
// for id lookups.
struct map_extract {
  std::vector<osm_node> nodes;
  std::vector<osm_way> ways;

  friend bool operator==(map_extract const&, map_extract const&) = default;
};

// id -> node lookup over an extract; pointers stay valid while `extract` lives.
std::unordered_map<node_id, osm_node const*> index_nodes(map_extract const& extract);

// Parses the `node` / `way` / `nd` / `tag` subset of OSM XML. Other elements
// (relations, bounds, metadata) are skipped.
//
// Throws malformed_input on XML syntax errors, out-of-range coordinates,
// duplicate node ids or missing attributes, and dangling_reference when a way
// names a node absent from the document.
map_extract parse_map_extract(std::istream& in);
map_extract parse_map_extract_file(std::string const& path);

// Writes the extract back as OSM XML; parse(serialize(x)) == x.
void serialize_map_extract(map_extract const& extract, std::ostream& out);

}  // namespace walkrag::geodata
