#include "walkrag/features.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

namespace walkrag::geodata {

namespace {

bool tag_in(tag_map const& tags, std::string const& key,
            std::initializer_list<std::string_view> values) {
  auto const it = tags.find(key);
  return it != tags.end() &&
         std::find(values.begin(), values.end(), it->second) != values.end();
}

void append_records(feature_set& out, std::string const& id, lat_lon pos,
                    tag_map const& tags) {
  for (auto const kind : classify_tags(tags)) {
    feature_record r;
    r.feature_id = id;
    r.kind = kind;
    r.pos = pos;
    r.tags = tags;
    if (auto const it = tags.find("name"); it != tags.end() && !it->second.empty()) {
      r.name = it->second;
    }
    if (kind == feature_kind::poi) {
      r.category = tags.at("tourism");
    }
    out.push_back(std::move(r));
  }
}

}  // namespace

std::string_view to_string(feature_kind kind) {
  switch (kind) {
    case feature_kind::sidewalk: return "Sidewalk";
    case feature_kind::green_area: return "GreenArea";
    case feature_kind::accessibility: return "Accessibility";
    case feature_kind::poi: return "POI";
  }
  return "POI";
}

std::vector<feature_kind> classify_tags(tag_map const& tags) {
  std::vector<feature_kind> kinds;
  if (tag_in(tags, "highway", {"footway"}) || tags.contains("footway") ||
      tags.contains("sidewalk")) {
    kinds.push_back(feature_kind::sidewalk);
  }
  if (tag_in(tags, "landuse", {"grass", "forest", "meadow", "recreation_ground"}) ||
      tag_in(tags, "natural", {"wood", "tree", "scrub"}) ||
      tag_in(tags, "leisure", {"park", "garden"})) {
    kinds.push_back(feature_kind::green_area);
  }
  if (tag_in(tags, "wheelchair", {"yes", "designated"})) {
    kinds.push_back(feature_kind::accessibility);
  }
  if (auto const it = tags.find("tourism"); it != tags.end() && !it->second.empty()) {
    kinds.push_back(feature_kind::poi);
  }
  return kinds;
}

feature_set extract_features(map_extract const& extract) {
  feature_set out;
  for (auto const& n : extract.nodes) {
    if (!n.tags.empty()) {
      append_records(out, "node/" + std::to_string(n.id), n.pos, n.tags);
    }
  }

  auto const nodes = index_nodes(extract);
  for (auto const& w : extract.ways) {
    if (w.refs.empty() || classify_tags(w.tags).empty()) {
      continue;
    }
    auto refs = w.refs;
    // A closed ring repeats its first vertex; count it once.
    if (refs.size() > 1 && refs.front() == refs.back()) {
      refs.pop_back();
    }
    lat_lon sum;
    for (auto const ref : refs) {
      auto const& p = nodes.at(ref)->pos;
      sum.lat += p.lat;
      sum.lon += p.lon;
    }
    auto const count = static_cast<double>(refs.size());
    append_records(out, "way/" + std::to_string(w.id),
                   {sum.lat / count, sum.lon / count}, w.tags);
  }
  return out;
}

void write_features_json(feature_set const& features, std::ostream& out) {
  auto doc = nlohmann::json::array();
  for (auto const& f : features) {
    nlohmann::json j{{"id", f.feature_id},
                     {"kind", to_string(f.kind)},
                     {"lat", f.pos.lat},
                     {"lon", f.pos.lon},
                     {"tags", f.tags}};
    if (f.name) {
      j["name"] = *f.name;
    }
    if (f.category) {
      j["category"] = *f.category;
    }
    doc.push_back(std::move(j));
  }
  out << doc.dump() << '\n';
}

feature_set read_features_json(std::istream& in) {
  auto const doc = nlohmann::json::parse(in);
  feature_set out;
  for (auto const& j : doc) {
    feature_record f;
    f.feature_id = j.at("id").get<std::string>();
    auto const kind = j.at("kind").get<std::string>();
    for (auto const k : {feature_kind::sidewalk, feature_kind::green_area,
                         feature_kind::accessibility, feature_kind::poi}) {
      if (to_string(k) == kind) {
        f.kind = k;
      }
    }
    f.pos = {j.at("lat").get<double>(), j.at("lon").get<double>()};
    f.tags = j.at("tags").get<tag_map>();
    if (j.contains("name")) {
      f.name = j.at("name").get<std::string>();
    }
    if (j.contains("category")) {
      f.category = j.at("category").get<std::string>();
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace walkrag::geodata
