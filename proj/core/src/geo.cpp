#include "walkrag/geo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace walkrag {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

}  // namespace

double haversine(lat_lon a, lat_lon b) {
  auto const phi1 = a.lat * kDegToRad;
  auto const phi2 = b.lat * kDegToRad;
  auto const dphi = (b.lat - a.lat) * kDegToRad;
  auto const dlambda = (b.lon - a.lon) * kDegToRad;
  auto const s1 = std::sin(dphi / 2.0);
  auto const s2 = std::sin(dlambda / 2.0);
  auto const h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

double bearing(lat_lon a, lat_lon b) {
  auto const phi1 = a.lat * kDegToRad;
  auto const phi2 = b.lat * kDegToRad;
  auto const dlambda = (b.lon - a.lon) * kDegToRad;
  auto const y = std::sin(dlambda) * std::cos(phi2);
  auto const x = std::cos(phi1) * std::sin(phi2) -
                 std::sin(phi1) * std::cos(phi2) * std::cos(dlambda);
  auto deg = std::atan2(y, x) * kRadToDeg;
  if (deg < 0.0) {
    deg += 360.0;
  }
  return deg >= 360.0 ? 0.0 : deg;
}

double bearing_change(double incoming, double outgoing) {
  auto d = std::fmod(outgoing - incoming, 360.0);
  if (d <= -180.0) {
    d += 360.0;
  } else if (d > 180.0) {
    d -= 360.0;
  }
  return d;
}

lat_lon closest_point_on_segment(lat_lon p, lat_lon a, lat_lon b) {
  auto const kx = std::cos(p.lat * kDegToRad);
  auto const ax = (a.lon - p.lon) * kx;
  auto const ay = a.lat - p.lat;
  auto const bx = (b.lon - p.lon) * kx;
  auto const by = b.lat - p.lat;
  auto const dx = bx - ax;
  auto const dy = by - ay;
  auto const len2 = dx * dx + dy * dy;
  if (len2 == 0.0) {
    return a;
  }
  auto const t = std::clamp(-(ax * dx + ay * dy) / len2, 0.0, 1.0);
  return {a.lat + t * (b.lat - a.lat), a.lon + t * (b.lon - a.lon)};
}

double point_segment_distance(lat_lon p, lat_lon a, lat_lon b) {
  return haversine(p, closest_point_on_segment(p, a, b));
}

double point_polyline_distance(lat_lon p, std::span<lat_lon const> polyline) {
  if (polyline.empty()) {
    return std::numeric_limits<double>::infinity();
  }
  if (polyline.size() == 1) {
    return haversine(p, polyline.front());
  }
  auto best = std::numeric_limits<double>::infinity();
  for (auto i = std::size_t{1}; i < polyline.size(); ++i) {
    best = std::min(best, point_segment_distance(p, polyline[i - 1], polyline[i]));
  }
  return best;
}

lat_lon polyline_midpoint(std::span<lat_lon const> polyline) {
  if (polyline.empty()) {
    return {};
  }
  auto total = 0.0;
  for (auto i = std::size_t{1}; i < polyline.size(); ++i) {
    total += haversine(polyline[i - 1], polyline[i]);
  }
  auto remaining = total / 2.0;
  for (auto i = std::size_t{1}; i < polyline.size(); ++i) {
    auto const len = haversine(polyline[i - 1], polyline[i]);
    if (len > 0.0 && remaining <= len) {
      auto const t = remaining / len;
      auto const& a = polyline[i - 1];
      auto const& b = polyline[i];
      return {a.lat + t * (b.lat - a.lat), a.lon + t * (b.lon - a.lon)};
    }
    remaining -= len;
  }
  return polyline.back();
}

double meters_to_lat_degrees(double meters) {
  return meters / (kEarthRadiusM * kDegToRad);
}

double meters_to_lon_degrees(double meters, double at_lat) {
  auto const c = std::max(std::cos(at_lat * kDegToRad), 1e-6);
  return meters / (kEarthRadiusM * kDegToRad * c);
}

}  // namespace walkrag
