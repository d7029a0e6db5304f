#include "walkrag/enrichment.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "walkrag/gazetteer.hpp"

namespace walkrag::enrichment {

namespace {

// The exact test measures haversine distance from an equirectangular closest
// point; pad the degree-space boxes generously so the prefilter never drops a
// point the exact test would keep.
constexpr double kBoxPadding = 1.05;

bbox padded_box(std::vector<lat_lon> const& polyline, double buffer_m) {
  bbox b{{90.0, 180.0}, {-90.0, -180.0}};
  for (auto const& p : polyline) {
    b.min.lat = std::min(b.min.lat, p.lat);
    b.min.lon = std::min(b.min.lon, p.lon);
    b.max.lat = std::max(b.max.lat, p.lat);
    b.max.lon = std::max(b.max.lon, p.lon);
  }
  auto const dlat = meters_to_lat_degrees(buffer_m * kBoxPadding);
  auto const extreme_lat = std::min(89.0, std::max(std::abs(b.min.lat), std::abs(b.max.lat)) + dlat);
  auto const dlon = meters_to_lon_degrees(buffer_m * kBoxPadding, extreme_lat);
  b.min.lat -= dlat;
  b.max.lat += dlat;
  b.min.lon -= dlon;
  b.max.lon += dlon;
  return b;
}

}  // namespace

corridor::corridor(std::vector<std::vector<lat_lon>> segment_polylines, double buffer_m)
    : segments_(std::move(segment_polylines)), buffer_m_(buffer_m) {
  if (!(buffer_m > 0.0)) {
    throw std::invalid_argument("corridor buffer must be positive");
  }
  segment_boxes_.reserve(segments_.size());
  for (auto const& s : segments_) {
    if (s.empty()) {
      throw std::invalid_argument("corridor segment without geometry");
    }
    segment_boxes_.push_back(padded_box(s, buffer_m_));
  }
}

std::optional<bbox> corridor::bounds() const {
  if (segments_.empty()) {
    return std::nullopt;
  }
  auto b = segment_boxes_.front();
  for (auto const& s : segment_boxes_) {
    b.min.lat = std::min(b.min.lat, s.min.lat);
    b.min.lon = std::min(b.min.lon, s.min.lon);
    b.max.lat = std::max(b.max.lat, s.max.lat);
    b.max.lon = std::max(b.max.lon, s.max.lon);
  }
  return b;
}

bbox corridor::segment_bounds(std::size_t segment) const { return segment_boxes_.at(segment); }

double corridor::distance_to_segment(lat_lon p, std::size_t segment) const {
  return point_polyline_distance(p, segments_.at(segment));
}

std::pair<std::size_t, double> corridor::nearest_segment(lat_lon p) const {
  auto best = std::pair{std::size_t{0}, std::numeric_limits<double>::infinity()};
  for (auto i = std::size_t{0}; i < segments_.size(); ++i) {
    auto const d = point_polyline_distance(p, segments_[i]);
    if (d < best.second) {
      best = {i, d};
    }
  }
  return best;
}

bool corridor::contains(lat_lon p) const {
  for (auto i = std::size_t{0}; i < segments_.size(); ++i) {
    if (segment_boxes_[i].contains(p) && point_polyline_distance(p, segments_[i]) <= buffer_m_) {
      return true;
    }
  }
  return false;
}

corridor buffer_route(routing::route_candidate const& route, double buffer_m) {
  std::vector<std::vector<lat_lon>> polylines;
  polylines.reserve(route.segments.size());
  for (auto const& s : route.segments) {
    polylines.push_back(s.polyline);
  }
  return corridor{std::move(polylines), buffer_m};
}

bool preference_filter::accepts(geodata::feature_record const& poi) const {
  if (poi.kind != geodata::feature_kind::poi || !poi.category) {
    return false;
  }
  return default_mode() || categories.contains(geodata::normalize_place_name(*poi.category));
}

std::vector<std::vector<attached_poi>> spatial_join(corridor const& c, spatial_index const& index,
                                                    preference_filter const& filter) {
  std::vector<std::vector<attached_poi>> out(c.segment_count());
  auto const bounds = c.bounds();
  if (!bounds) {
    return out;
  }
  auto const& features = index.features();
  for (auto const i : index.query(*bounds)) {
    auto const& f = features[i];
    if (!filter.accepts(f)) {
      continue;
    }
    auto const [seg, dist] = c.nearest_segment(f.pos);
    if (dist > c.buffer_m()) {
      continue;
    }
    out[seg].push_back({i, f.name.value_or("unnamed " + *f.category), *f.category, dist});
  }
  for (auto& list : out) {
    std::sort(list.begin(), list.end(), [&](attached_poi const& a, attached_poi const& b) {
      if (a.distance_m != b.distance_m) {
        return a.distance_m < b.distance_m;
      }
      return features[a.feature].feature_id < features[b.feature].feature_id;
    });
  }
  return out;
}

}  // namespace walkrag::enrichment
