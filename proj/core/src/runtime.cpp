#include "walkrag/runtime.hpp"

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "walkrag/errors.hpp"
#include "walkrag/features.hpp"
#include "walkrag/osm.hpp"

namespace walkrag {

namespace fs = std::filesystem;

namespace {

std::ifstream open_input(fs::path const& path) {
  std::ifstream in{path, std::ios::binary};
  if (!in) {
    throw config_error("cannot open " + path.string());
  }
  return in;
}

}  // namespace

ingest_stats ingest_map(std::string const& map_path, std::string const& out_dir) {
  auto const extract = geodata::parse_map_extract_file(map_path);
  auto const graph = routing::build_pedestrian_graph(extract);
  auto const features = geodata::extract_features(extract);

  ingest_stats stats;
  stats.nodes = extract.nodes.size();
  stats.ways = extract.ways.size();
  stats.graph_nodes = graph.node_count();
  stats.graph_edges = graph.edge_count();
  for (auto const& f : features) {
    switch (f.kind) {
      case geodata::feature_kind::sidewalk: ++stats.sidewalk; break;
      case geodata::feature_kind::green_area: ++stats.green_area; break;
      case geodata::feature_kind::accessibility: ++stats.accessibility; break;
      case geodata::feature_kind::poi: ++stats.poi; break;
    }
  }

  fs::create_directories(out_dir);
  fs::path const dir{out_dir};
  {
    std::ofstream out{dir / "graph.json", std::ios::binary | std::ios::trunc};
    graph.write_json(out);
  }
  {
    std::ofstream out{dir / "features.json", std::ios::binary | std::ios::trunc};
    geodata::write_features_json(features, out);
  }
  nlohmann::ordered_json j{{"nodes", stats.nodes},
                           {"ways", stats.ways},
                           {"graph_nodes", stats.graph_nodes},
                           {"graph_edges", stats.graph_edges},
                           {"features",
                            {{"Sidewalk", stats.sidewalk},
                             {"GreenArea", stats.green_area},
                             {"Accessibility", stats.accessibility},
                             {"POI", stats.poi}}}};
  std::ofstream out{dir / "stats.json", std::ios::binary | std::ios::trunc};
  out << j.dump(2) << '\n';
  return stats;
}

std::unique_ptr<retrieval::embedder> make_embedder(service_config const& config) {
  if (config.encoder == "http") {
    return std::make_unique<retrieval::http_embedder>(config.encoder_url, config.encoder_model,
                                                      config.dimension);
  }
  return std::make_unique<retrieval::hashing_embedder>(config.dimension);
}

runtime::runtime(service_config config) : config_(std::move(config)) {
  config_.validate();

  if (!config_.artifacts_dir.empty()) {
    fs::path const dir{config_.artifacts_dir};
    auto graph_in = open_input(dir / "graph.json");
    graph_ = std::make_unique<routing::pedestrian_graph>(
        routing::pedestrian_graph::read_json(graph_in));
    auto features_in = open_input(dir / "features.json");
    features_ = std::make_unique<enrichment::spatial_index>(
        geodata::read_features_json(features_in));
  } else {
    auto const extract = geodata::parse_map_extract_file(config_.map_path);
    graph_ = std::make_unique<routing::pedestrian_graph>(routing::build_pedestrian_graph(extract));
    features_ = std::make_unique<enrichment::spatial_index>(geodata::extract_features(extract));
  }

  auto gazetteer_path = config_.gazetteer_path;
  if (gazetteer_path.empty()) {
    gazetteer_path = (fs::path{config_.artifacts_dir} / "gazetteer.csv").string();
  }
  places_ = std::make_unique<geodata::gazetteer>(geodata::gazetteer::load_file(gazetteer_path));

  if (config_.air_quality_mode == "http") {
    air_quality_ = std::make_unique<geodata::http_air_quality_client>(config_.air_quality_url,
                                                                      config_.air_quality_key);
  } else if (config_.air_quality_mode == "fixture" && !config_.air_quality_path.empty()) {
    air_quality_ = std::make_unique<geodata::fixture_air_quality_client>(
        geodata::fixture_air_quality_client::load_file(config_.air_quality_path));
  }

  passages_ = std::make_unique<retrieval::passage_store>(
      retrieval::load_corpus_file(config_.corpus_path));
  encoder_ = make_embedder(config_);
  if (!config_.index_path.empty() && fs::exists(config_.index_path)) {
    index_ = std::make_unique<retrieval::vector_index>(
        retrieval::vector_index::load_file(config_.index_path));
    if (index_->dimension() != encoder_->dimension() && !index_->empty()) {
      throw dimension_mismatch("index dimension " + std::to_string(index_->dimension()) +
                               " does not match encoder dimension " +
                               std::to_string(encoder_->dimension()));
    }
  } else {
    retrieval::ivf_params params;
    params.nlist = config_.nlist;
    params.nprobe = config_.nprobe;
    index_ = std::make_unique<retrieval::vector_index>(
        retrieval::build_corpus_index(*passages_, *encoder_, config_.index_mode, params));
  }

  if (config_.llm_mode == "http") {
    llm_ = std::make_unique<quag::http_llm_client>(config_.llm_url, config_.llm_model,
                                                   config_.llm_timeout_s);
  } else {
    llm_ = std::make_unique<quag::mock_llm_client>();
  }
  if (config_.classifier == "llm") {
    classifier_ = std::make_unique<quag::llm_classifier>(*llm_, *places_);
  } else {
    classifier_ = std::make_unique<quag::rule_based_classifier>(*places_);
  }

  quag::engine_services services;
  services.graph = graph_.get();
  services.features = features_.get();
  services.places = places_.get();
  services.air_quality = air_quality_.get();
  services.passages = passages_.get();
  services.index = index_.get();
  services.encoder = encoder_.get();
  services.llm = llm_.get();
  services.classifier = classifier_.get();

  quag::engine_options options;
  options.routing.alternatives = config_.alternatives;
  options.routing.penalty_factor = config_.penalty_factor;
  options.routing.max_snap_m = config_.max_snap_m;
  options.scoring.tau = config_.tau;
  options.scoring.weights = config_.weights;
  options.scoring.indicator_buffer_m = config_.indicator_buffer_m;
  options.poi_buffer_m = config_.poi_buffer_m;
  options.top_k = config_.k;
  if (!config_.prompt_dir.empty()) {
    options.templates = quag::prompt_templates::load_dir(config_.prompt_dir);
  }
  engine_ = std::make_unique<quag::engine>(services, std::move(options));
}

runtime::~runtime() = default;

}  // namespace walkrag
