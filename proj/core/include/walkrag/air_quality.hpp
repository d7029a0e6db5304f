#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "walkrag/geo.hpp"

namespace walkrag::geodata {

struct air_quality_sample {
  int aqi = 3;  // 1 (good) .. 5 (very poor)
  lat_lon location;
  std::int64_t timestamp = 0;  // unix seconds
};

// Source of air-quality readings. Implementations throw `unavailable` on any
// failure so callers can degrade.
class air_quality_client {
public:
  virtual ~air_quality_client() = default;
  virtual air_quality_sample fetch(lat_lon location) = 0;
};

// Fixture-backed stub keyed by "lat,lon" rounded to two decimals.
class fixture_air_quality_client : public air_quality_client {
public:
  explicit fixture_air_quality_client(std::map<std::string, int> grid);

  // JSON object {"48.85,2.29": 2, ...}.
  static fixture_air_quality_client load_file(std::string const& path);

  static std::string key_for(lat_lon location);

  air_quality_sample fetch(lat_lon location) override;

private:
  std::map<std::string, int> grid_;
};

// OpenWeatherMap-compatible `GET /data/2.5/air_pollution?lat=&lon=&appid=`
// over plain HTTP.
class http_air_quality_client : public air_quality_client {
public:
  http_air_quality_client(std::string base_url, std::string api_key, int timeout_s = 5);

  air_quality_sample fetch(lat_lon location) override;

private:
  std::string base_url_;
  std::string api_key_;
  int timeout_s_;
};

inline air_quality_sample fetch_air_quality(lat_lon location, air_quality_client& client) {
  return client.fetch(location);
}

}  // namespace walkrag::geodata
