#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "walkrag/router.hpp"
#include "walkrag/walkability.hpp"

namespace walkrag::quag {

inline constexpr int kPayloadVersion = 1;

struct payload_indicator {
  std::string kind;
  double c = 0.0;
  double w = 0.0;
};

struct payload_poi {
  std::string name;
  std::string category;
};

struct payload_segment {
  std::size_t index = 0;
  double length_m = 0.0;
  std::vector<payload_poi> pois;
};

// Structured answer of the spatial pipeline: the best route's instructions,
// its walkability breakdown and the POIs attached to each segment.
struct route_payload {
  int payload_version = kPayloadVersion;
  std::string origin;
  std::string destination;
  std::vector<routing::instruction> instructions;
  double ws = 0.0;
  double tau = walkability::kDefaultTau;
  std::vector<payload_indicator> indicators;
  std::vector<std::string> flags;
  std::vector<payload_segment> segments;
};

// Fixed field order:
// {payload_version, origin, destination, instructions: [{kind, text, distance_m}],
//  walkability: {ws, tau, indicators: [{kind, c, w}], flags}, segments: [{index, length_m,
//  pois: [{name, category}]}]}
// Distances are rounded to centimetres and scores to 1e-6 so the bytes do not
// depend on last-ulp libm differences.
nlohmann::ordered_json to_json(route_payload const& p);
// Throws std::invalid_argument for a payload_version other than kPayloadVersion.
route_payload payload_from_json(nlohmann::ordered_json const& j);

// Pretty-printed (2-space) JSON plus trailing newline.
std::string serialize_payload(route_payload const& p);
route_payload parse_payload(std::string const& text);

double round_to(double value, int decimals);

}  // namespace walkrag::quag
