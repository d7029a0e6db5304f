#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "walkrag/geo.hpp"

namespace walkrag::geodata {

struct gazetteer_entry {
  std::string name;
  lat_lon pos;
};

// Lowercases ASCII letters and trims surrounding whitespace.
std::string normalize_place_name(std::string_view name);

// Local name -> coordinates table standing in for an online geocoder.
class gazetteer {
public:
  gazetteer() = default;
  explicit gazetteer(std::vector<gazetteer_entry> entries);

  // CSV with header `name,lat,lon`. Fields may be double-quoted.
  static gazetteer load(std::istream& in);
  static gazetteer load_file(std::string const& path);

  // Exact match after normalization; throws not_found otherwise.
  lat_lon geocode(std::string_view name) const;
  std::optional<lat_lon> find(std::string_view name) const;

  std::vector<gazetteer_entry> const& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  void write_csv(std::ostream& out) const;

private:
  std::vector<gazetteer_entry> entries_;
  std::unordered_map<std::string, std::size_t> by_key_;
};

}  // namespace walkrag::geodata
