#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "walkrag/geo.hpp"
#include "walkrag/osm.hpp"

namespace walkrag::geodata {

enum class feature_kind { sidewalk, green_area, accessibility, poi };

std::string_view to_string(feature_kind kind);

struct feature_record {
  std::string feature_id;  // "node/<id>" or "way/<id>"
  feature_kind kind = feature_kind::poi;
  lat_lon pos;  // vertex centroid for way features
  tag_map tags;
  std::optional<std::string> name;
  std::optional<std::string> category;  // set for POIs only
};

using feature_set = std::vector<feature_record>;

// Rule table:
//   sidewalk       highway=footway, any footway=*, any sidewalk=*
//   green_area     landuse in {grass, forest, meadow, recreation_ground},
//                  natural in {wood, tree, scrub}, leisure in {park, garden}
//   accessibility  wheelchair in {yes, designated}
//   poi            any non-empty tourism=* (category = value)
// Returns the matching kinds in the order above.
std::vector<feature_kind> classify_tags(tag_map const& tags);

// One record per (entity, matching kind). Way features sit at the arithmetic
// centroid of their distinct vertices.
feature_set extract_features(map_extract const& extract);

// JSON array of {id, kind, lat, lon, tags, name?, category?}.
void write_features_json(feature_set const& features, std::ostream& out);
feature_set read_features_json(std::istream& in);

}  // namespace walkrag::geodata
