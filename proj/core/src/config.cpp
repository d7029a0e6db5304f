#include "walkrag/config.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "walkrag/errors.hpp"

extern char** environ;

namespace walkrag {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

template <typename T>
T parse_as(std::string const& key, std::string const& text) {
  T value{};
  auto const* last = text.data() + text.size();
  auto const [ptr, ec] = std::from_chars(text.data(), last, value);
  if (ec != std::errc{} || ptr != last) {
    throw config_error("'" + key + "': cannot parse '" + text + "'");
  }
  return value;
}

walkability::indicator_weights parse_weights(std::string const& key, std::string const& text) {
  walkability::indicator_weights w;
  std::istringstream in{text};
  std::string item;
  std::size_t i = 0;
  while (std::getline(in, item, ',')) {
    auto const first = item.find_first_not_of(' ');
    auto const last = item.find_last_not_of(' ');
    if (i >= walkability::kIndicatorCount || first == std::string::npos) {
      throw config_error("'" + key + "': expected four comma-separated weights");
    }
    w.w[i++] = parse_as<double>(key, item.substr(first, last - first + 1));
  }
  if (i != walkability::kIndicatorCount) {
    throw config_error("'" + key + "': expected four comma-separated weights");
  }
  return w;
}

struct key_binding {
  std::function<void(service_config&, std::string const& value, fs::path const& base)> apply;
};

std::string resolve(std::string const& value, fs::path const& base) {
  if (value.empty() || base.empty() || fs::path{value}.is_absolute()) {
    return value;
  }
  return (base / value).lexically_normal().string();
}

std::map<std::string, key_binding> const& bindings() {
  using cfg = service_config;
  auto path = [](std::string cfg::*m) {
    return key_binding{[m](cfg& c, std::string const& v, fs::path const& b) { c.*m = resolve(v, b); }};
  };
  auto text = [](std::string cfg::*m) {
    return key_binding{[m](cfg& c, std::string const& v, fs::path const&) { c.*m = v; }};
  };
  auto num = [](auto cfg::*m, char const* key) {
    return key_binding{[m, key](cfg& c, std::string const& v, fs::path const&) {
      c.*m = parse_as<std::remove_reference_t<decltype(c.*m)>>(key, v);
    }};
  };
  static std::map<std::string, key_binding> const table = {
      {"data.map", path(&cfg::map_path)},
      {"data.gazetteer", path(&cfg::gazetteer_path)},
      {"data.air_quality", path(&cfg::air_quality_path)},
      {"data.corpus", path(&cfg::corpus_path)},
      {"data.index", path(&cfg::index_path)},
      {"data.artifacts", path(&cfg::artifacts_dir)},
      {"data.state_dir", path(&cfg::state_dir)},
      {"data.prompt_dir", path(&cfg::prompt_dir)},
      {"server.host", text(&cfg::host)},
      {"server.port", num(&cfg::port, "server.port")},
      {"retrieval.k", num(&cfg::k, "retrieval.k")},
      {"retrieval.encoder", text(&cfg::encoder)},
      {"retrieval.dimension", num(&cfg::dimension, "retrieval.dimension")},
      {"retrieval.encoder_url", text(&cfg::encoder_url)},
      {"retrieval.encoder_model", text(&cfg::encoder_model)},
      {"retrieval.mode",
       {[](cfg& c, std::string const& v, fs::path const&) {
         try {
           c.index_mode = retrieval::index_mode_from_string(v);
         } catch (std::invalid_argument const& e) {
           throw config_error(std::string{"'retrieval.mode': "} + e.what());
         }
       }}},
      {"retrieval.nlist", num(&cfg::nlist, "retrieval.nlist")},
      {"retrieval.nprobe", num(&cfg::nprobe, "retrieval.nprobe")},
      {"walkability.tau", num(&cfg::tau, "walkability.tau")},
      {"walkability.weights",
       {[](cfg& c, std::string const& v, fs::path const&) {
         c.weights = parse_weights("walkability.weights", v);
       }}},
      {"walkability.indicator_buffer_m",
       num(&cfg::indicator_buffer_m, "walkability.indicator_buffer_m")},
      {"enrichment.poi_buffer_m", num(&cfg::poi_buffer_m, "enrichment.poi_buffer_m")},
      {"routing.alternatives", num(&cfg::alternatives, "routing.alternatives")},
      {"routing.penalty_factor", num(&cfg::penalty_factor, "routing.penalty_factor")},
      {"routing.max_snap_m", num(&cfg::max_snap_m, "routing.max_snap_m")},
      {"llm.mode", text(&cfg::llm_mode)},
      {"llm.url", text(&cfg::llm_url)},
      {"llm.model", text(&cfg::llm_model)},
      {"llm.timeout_s", num(&cfg::llm_timeout_s, "llm.timeout_s")},
      {"classifier.mode", text(&cfg::classifier)},
      {"air_quality.mode", text(&cfg::air_quality_mode)},
      {"air_quality.url", text(&cfg::air_quality_url)},
      {"air_quality.api_key", text(&cfg::air_quality_key)},
  };
  return table;
}

void apply(service_config& c, std::string const& key, std::string const& value,
           fs::path const& base) {
  auto const& table = bindings();
  auto const it = table.find(key);
  if (it == table.end()) {
    throw config_error("unknown configuration key '" + key + "'");
  }
  it->second.apply(c, value, base);
}

std::string lowercase(std::string s) {
  for (auto& ch : s) {
    if (ch >= 'A' && ch <= 'Z') {
      ch = static_cast<char>(ch - 'A' + 'a');
    }
  }
  return s;
}

}  // namespace

void service_config::validate() const {
  if (!(tau > 0.0)) throw config_error("'walkability.tau' must be > 0");
  if (!weights.valid()) throw config_error("'walkability.weights' must be non-negative and sum to 1");
  if (k < 1) throw config_error("'retrieval.k' must be >= 1");
  if (alternatives < 1) throw config_error("'routing.alternatives' must be >= 1");
  if (!(penalty_factor > 1.0)) throw config_error("'routing.penalty_factor' must be > 1");
  if (!(max_snap_m > 0.0)) throw config_error("'routing.max_snap_m' must be > 0");
  if (!(indicator_buffer_m > 0.0)) throw config_error("'walkability.indicator_buffer_m' must be > 0");
  if (!(poi_buffer_m > 0.0)) throw config_error("'enrichment.poi_buffer_m' must be > 0");
  if (dimension < 1) throw config_error("'retrieval.dimension' must be >= 1");
  if (port < 0 || port > 65535) throw config_error("'server.port' out of range");
  if (encoder != "hashing" && encoder != "http") throw config_error("'retrieval.encoder' must be hashing or http");
  if (encoder == "http" && encoder_url.empty()) throw config_error("'retrieval.encoder_url' is required for the http encoder");
  if (llm_mode != "mock" && llm_mode != "http") throw config_error("'llm.mode' must be mock or http");
  if (llm_mode == "http" && llm_url.empty()) throw config_error("'llm.url' is required for the http client");
  if (classifier != "rules" && classifier != "llm") throw config_error("'classifier.mode' must be rules or llm");
  if (air_quality_mode != "fixture" && air_quality_mode != "http" && air_quality_mode != "none") {
    throw config_error("'air_quality.mode' must be fixture, http or none");
  }
  if (air_quality_mode == "http" && air_quality_url.empty()) {
    throw config_error("'air_quality.url' is required for the http feed");
  }
  if (map_path.empty() && artifacts_dir.empty()) throw config_error("one of 'data.map' or 'data.artifacts' is required");
  if (gazetteer_path.empty() && artifacts_dir.empty()) throw config_error("'data.gazetteer' is required");
  if (corpus_path.empty()) throw config_error("'data.corpus' is required");
}

environment process_environment() {
  environment env;
  for (auto** e = environ; e != nullptr && *e != nullptr; ++e) {
    std::string const entry{*e};
    if (entry.rfind("WALKRAG_", 0) != 0) {
      continue;
    }
    auto const eq = entry.find('=');
    if (eq != std::string::npos) {
      env.emplace(entry.substr(0, eq), entry.substr(eq + 1));
    }
  }
  return env;
}

service_config load_config(std::optional<std::string> const& path, environment const& env) {
  service_config c;
  if (path) {
    pt::ptree tree;
    try {
      pt::read_ini(*path, tree);
    } catch (pt::ini_parser_error const& e) {
      throw config_error(e.what());
    }
    auto const base = fs::absolute(fs::path{*path}).parent_path();
    for (auto const& [section, children] : tree) {
      if (children.empty()) {
        throw config_error("key '" + section + "' must live inside a [section]");
      }
      for (auto const& [key, value] : children) {
        apply(c, section + "." + key, value.data(), base);
      }
    }
  }
  auto const& table = bindings();
  for (auto const& [name, value] : env) {
    if (name.rfind("WALKRAG_", 0) != 0 || name == "WALKRAG_CONFIG") {
      continue;
    }
    auto const rest = lowercase(name.substr(8));
    auto matched = false;
    for (auto const& [key, binding] : table) {
      auto flat = key;
      flat[flat.find('.')] = '_';
      if (flat == rest) {
        binding.apply(c, value, fs::current_path());
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw config_error("unknown environment override '" + name + "'");
    }
  }
  c.validate();
  return c;
}

service_config fixture_config(std::string const& fixture_dir) {
  fs::path const dir{fixture_dir};
  service_config c;
  c.map_path = (dir / "map.osm").string();
  c.gazetteer_path = (dir / "gazetteer.csv").string();
  c.air_quality_path = (dir / "air_quality.json").string();
  c.corpus_path = (dir / "corpus.jsonl").string();
  return c;
}

}  // namespace walkrag
