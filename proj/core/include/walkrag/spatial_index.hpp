#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "walkrag/features.hpp"
#include "walkrag/geo.hpp"

namespace walkrag::enrichment {

struct bbox {
  lat_lon min;
  lat_lon max;

  bool contains(lat_lon p) const {
    return p.lat >= min.lat && p.lat <= max.lat && p.lon >= min.lon && p.lon <= max.lon;
  }
};

// Bulk-loaded R-tree over feature points. Immutable once built.
class spatial_index {
public:
  spatial_index();
  explicit spatial_index(geodata::feature_set features);
  ~spatial_index();
  spatial_index(spatial_index&&) noexcept;
  spatial_index& operator=(spatial_index&&) noexcept;

  // Indices into features() of every point inside `box` (edges inclusive),
  // ascending.
  std::vector<std::size_t> query(bbox const& box) const;

  geodata::feature_set const& features() const { return features_; }
  std::size_t size() const { return features_.size(); }

private:
  struct tree;
  geodata::feature_set features_;
  std::unique_ptr<tree> tree_;
};

inline spatial_index build_spatial_index(geodata::feature_set features) {
  return spatial_index{std::move(features)};
}

}  // namespace walkrag::enrichment
