#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "walkrag/router.hpp"
#include "walkrag/spatial_index.hpp"

namespace walkrag::enrichment {

// Region within `buffer_m` of a route's segment polylines.
class corridor {
public:
  corridor(std::vector<std::vector<lat_lon>> segment_polylines, double buffer_m);

  std::size_t segment_count() const { return segments_.size(); }
  double buffer_m() const { return buffer_m_; }
  bool empty() const { return segments_.empty(); }

  // Bounding box of the whole corridor, padded so that every point within
  // buffer_m of the route lies inside it.
  std::optional<bbox> bounds() const;
  bbox segment_bounds(std::size_t segment) const;

  double distance_to_segment(lat_lon p, std::size_t segment) const;
  // Nearest segment and its distance; ties resolve to the earlier segment.
  std::pair<std::size_t, double> nearest_segment(lat_lon p) const;

  // bbox prefilter followed by the exact haversine test.
  bool contains(lat_lon p) const;

private:
  std::vector<std::vector<lat_lon>> segments_;
  std::vector<bbox> segment_boxes_;
  double buffer_m_;
};

// Throws std::invalid_argument unless buffer_m > 0.
corridor buffer_route(routing::route_candidate const& route, double buffer_m);

struct preference_filter {
  std::set<std::string> categories;  // lowercase POI categories

  // No categories means "general tourist information": every POI qualifies.
  bool default_mode() const { return categories.empty(); }
  bool accepts(geodata::feature_record const& poi) const;
};

struct attached_poi {
  std::size_t feature = 0;  // index into spatial_index::features()
  std::string name;
  std::string category;
  double distance_m = 0.0;
};

// POIs inside the corridor that pass the filter, each attached to its nearest
// segment. Result has one (possibly empty) list per segment, each ordered by
// distance then feature id.
std::vector<std::vector<attached_poi>> spatial_join(corridor const& c, spatial_index const& index,
                                                    preference_filter const& filter);

}  // namespace walkrag::enrichment
