#pragma once

#include <span>

namespace walkrag {

inline constexpr double kEarthRadiusM = 6'371'000.0;

struct lat_lon {
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(lat_lon const&, lat_lon const&) = default;
};

// Great-circle distance in meters.
double haversine(lat_lon a, lat_lon b);

// Initial bearing a -> b in degrees, [0, 360), clockwise from north.
double bearing(lat_lon a, lat_lon b);

// Signed bearing change in (-180, 180]; negative means a left turn.
double bearing_change(double incoming, double outgoing);

// Closest point to `p` on segment a-b. The segment is parametrised in a local
// equirectangular frame centred on `p`; the returned point is interpolated in
// lat/lon.
lat_lon closest_point_on_segment(lat_lon p, lat_lon a, lat_lon b);

// Haversine distance from `p` to the closest point of segment a-b.
double point_segment_distance(lat_lon p, lat_lon a, lat_lon b);

// Minimum distance from `p` to any edge of the polyline. A single-vertex
// polyline degenerates to the point distance.
double point_polyline_distance(lat_lon p, std::span<lat_lon const> polyline);

// Length-weighted midpoint along a polyline.
lat_lon polyline_midpoint(std::span<lat_lon const> polyline);

// Degrees of latitude / longitude spanned by `meters` around `at`, used to
// widen bounding boxes before an exact distance test.
double meters_to_lat_degrees(double meters);
double meters_to_lon_degrees(double meters, double at_lat);

}  // namespace walkrag
