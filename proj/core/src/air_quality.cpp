#include "walkrag/air_quality.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "walkrag/errors.hpp"

namespace walkrag::geodata {

namespace {

void check_grade(int aqi) {
  if (aqi < 1 || aqi > 5) {
    throw unavailable("air-quality grade " + std::to_string(aqi) + " outside 1..5");
  }
}

}  // namespace

fixture_air_quality_client::fixture_air_quality_client(std::map<std::string, int> grid)
    : grid_(std::move(grid)) {
  for (auto const& [key, aqi] : grid_) {
    if (aqi < 1 || aqi > 5) {
      throw config_error("air-quality fixture '" + key + "' has grade outside 1..5");
    }
  }
}

fixture_air_quality_client fixture_air_quality_client::load_file(std::string const& path) {
  std::ifstream in{path};
  if (!in) {
    throw config_error("cannot open air-quality fixture " + path);
  }
  try {
    auto const doc = nlohmann::json::parse(in);
    std::map<std::string, int> grid;
    for (auto const& [key, value] : doc.items()) {
      grid.emplace(key, value.get<int>());
    }
    return fixture_air_quality_client{std::move(grid)};
  } catch (nlohmann::json::exception const& e) {
    throw config_error("air-quality fixture " + path + ": " + e.what());
  }
}

std::string fixture_air_quality_client::key_for(lat_lon location) {
  auto const round2 = [](double v) {
    auto const r = std::round(v * 100.0) / 100.0;
    return r == 0.0 ? 0.0 : r;  // no "-0.00"
  };
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f,%.2f", round2(location.lat), round2(location.lon));
  return buf;
}

air_quality_sample fixture_air_quality_client::fetch(lat_lon location) {
  auto const it = grid_.find(key_for(location));
  if (it == grid_.end()) {
    throw unavailable("no air-quality fixture for " + key_for(location));
  }
  return {it->second, location, 0};
}

http_air_quality_client::http_air_quality_client(std::string base_url, std::string api_key,
                                                 int timeout_s)
    : base_url_(std::move(base_url)), api_key_(std::move(api_key)), timeout_s_(timeout_s) {}

air_quality_sample http_air_quality_client::fetch(lat_lon location) {
  httplib::Client client{base_url_};
  client.set_connection_timeout(timeout_s_);
  client.set_read_timeout(timeout_s_);
  auto const params = httplib::Params{{"lat", std::to_string(location.lat)},
                                      {"lon", std::to_string(location.lon)},
                                      {"appid", api_key_}};
  auto const res = client.Get("/data/2.5/air_pollution", params, httplib::Headers{});
  if (!res) {
    throw unavailable("air-quality request failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw unavailable("air-quality service returned HTTP " + std::to_string(res->status));
  }
  try {
    auto const doc = nlohmann::json::parse(res->body);
    auto const& entry = doc.at("list").at(0);
    air_quality_sample sample;
    sample.aqi = entry.at("main").at("aqi").get<int>();
    sample.location = location;
    sample.timestamp = entry.value("dt", std::int64_t{0});
    check_grade(sample.aqi);
    return sample;
  } catch (nlohmann::json::exception const& e) {
    throw unavailable(std::string{"air-quality response: "} + e.what());
  }
}

}  // namespace walkrag::geodata
