#include "walkrag/spatial_index.hpp"

#include <algorithm>
#include <iterator>
#include <utility>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/box.hpp>
#include <boost/geometry/geometries/point.hpp>
#include <boost/geometry/index/rtree.hpp>

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

namespace walkrag::enrichment {

namespace {

// x = lon, y = lat; boxes are axis-aligned in degree space, so a cartesian
// tree gives exactly the same answers as a scan with the same comparisons.
using point_t = bg::model::point<double, 2, bg::cs::cartesian>;
using box_t = bg::model::box<point_t>;
using value_t = std::pair<point_t, std::size_t>;

}  // namespace

struct spatial_index::tree {
  bgi::rtree<value_t, bgi::rstar<16>> rtree;
};

spatial_index::spatial_index() : tree_(std::make_unique<tree>()) {}

spatial_index::spatial_index(geodata::feature_set features)
    : features_(std::move(features)), tree_(std::make_unique<tree>()) {
  std::vector<value_t> values;
  values.reserve(features_.size());
  for (auto i = std::size_t{0}; i < features_.size(); ++i) {
    values.emplace_back(point_t{features_[i].pos.lon, features_[i].pos.lat}, i);
  }
  tree_->rtree = bgi::rtree<value_t, bgi::rstar<16>>(values);  // packing bulk load
}

spatial_index::~spatial_index() = default;
spatial_index::spatial_index(spatial_index&&) noexcept = default;
spatial_index& spatial_index::operator=(spatial_index&&) noexcept = default;

std::vector<std::size_t> spatial_index::query(bbox const& box) const {
  std::vector<value_t> hits;
  box_t const b{point_t{box.min.lon, box.min.lat}, point_t{box.max.lon, box.max.lat}};
  tree_->rtree.query(bgi::covered_by(b), std::back_inserter(hits));
  std::vector<std::size_t> out;
  out.reserve(hits.size());
  for (auto const& [p, i] : hits) {
    out.push_back(i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace walkrag::enrichment
