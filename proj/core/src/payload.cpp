#include "walkrag/payload.hpp"

#include <stdexcept>

#include <cmath>

namespace walkrag::quag {

namespace {

constexpr int kDistanceDecimals = 2;
constexpr int kScoreDecimals = 6;

}  // namespace

double round_to(double value, int decimals) {
  auto const scale = std::pow(10.0, decimals);
  auto const r = std::round(value * scale) / scale;
  return r == 0.0 ? 0.0 : r;
}

nlohmann::ordered_json to_json(route_payload const& p) {
  using json = nlohmann::ordered_json;
  json instructions = json::array();
  for (auto const& i : p.instructions) {
    instructions.push_back(json{{"kind", routing::to_string(i.kind)},
                                {"text", i.text},
                                {"distance_m", round_to(i.distance_m, kDistanceDecimals)}});
  }
  json indicators = json::array();
  for (auto const& ind : p.indicators) {
    indicators.push_back(json{{"kind", ind.kind},
                              {"c", round_to(ind.c, kScoreDecimals)},
                              {"w", round_to(ind.w, kScoreDecimals)}});
  }
  json segments = json::array();
  for (auto const& s : p.segments) {
    json pois = json::array();
    for (auto const& poi : s.pois) {
      pois.push_back(json{{"name", poi.name}, {"category", poi.category}});
    }
    segments.push_back(json{{"index", s.index},
                            {"length_m", round_to(s.length_m, kDistanceDecimals)},
                            {"pois", std::move(pois)}});
  }
  return json{{"payload_version", p.payload_version},
              {"origin", p.origin},
              {"destination", p.destination},
              {"instructions", std::move(instructions)},
              {"walkability", json{{"ws", round_to(p.ws, kScoreDecimals)},
                                   {"tau", p.tau},
                                   {"indicators", std::move(indicators)},
                                   {"flags", p.flags}}},
              {"segments", std::move(segments)}};
}

route_payload payload_from_json(nlohmann::ordered_json const& j) {
  route_payload p;
  p.payload_version = j.at("payload_version").get<int>();
  if (p.payload_version != kPayloadVersion) {
    throw std::invalid_argument("unsupported payload_version " + std::to_string(p.payload_version));
  }
  p.origin = j.at("origin").get<std::string>();
  p.destination = j.at("destination").get<std::string>();
  for (auto const& i : j.at("instructions")) {
    p.instructions.push_back({routing::instruction_kind_from_string(i.at("kind").get<std::string>()),
                              i.at("text").get<std::string>(), i.at("distance_m").get<double>()});
  }
  auto const& w = j.at("walkability");
  p.ws = w.at("ws").get<double>();
  p.tau = w.at("tau").get<double>();
  for (auto const& ind : w.at("indicators")) {
    p.indicators.push_back(
        {ind.at("kind").get<std::string>(), ind.at("c").get<double>(), ind.at("w").get<double>()});
  }
  p.flags = w.at("flags").get<std::vector<std::string>>();
  for (auto const& s : j.at("segments")) {
    payload_segment seg;
    seg.index = s.at("index").get<std::size_t>();
    seg.length_m = s.at("length_m").get<double>();
    for (auto const& poi : s.at("pois")) {
      seg.pois.push_back({poi.at("name").get<std::string>(), poi.at("category").get<std::string>()});
    }
    p.segments.push_back(std::move(seg));
  }
  return p;
}

std::string serialize_payload(route_payload const& p) { return to_json(p).dump(2) + "\n"; }

route_payload parse_payload(std::string const& text) {
  return payload_from_json(nlohmann::ordered_json::parse(text));
}

}  // namespace walkrag::quag
