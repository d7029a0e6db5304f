#pragma once

#include <memory>
#include <string>

#include "walkrag/config.hpp"
#include "walkrag/engine.hpp"

namespace walkrag {

// Counts reported by `walkrag ingest`.
struct ingest_stats {
  std::size_t nodes = 0;
  std::size_t ways = 0;
  std::size_t graph_nodes = 0;
  std::size_t graph_edges = 0;
  std::size_t sidewalk = 0;
  std::size_t green_area = 0;
  std::size_t accessibility = 0;
  std::size_t poi = 0;
};

// Parses a map extract and writes graph.json, features.json and stats.json
// into `out_dir` (created if needed). Throws what the parser throws.
ingest_stats ingest_map(std::string const& map_path, std::string const& out_dir);

// Owns the loaded data and clients behind one engine.
class runtime {
public:
  // Loads the map (or prebuilt artifacts), gazetteer, air-quality feed and
  // corpus, then builds or loads the vector index.
  explicit runtime(service_config config);
  ~runtime();

  runtime(runtime const&) = delete;
  runtime& operator=(runtime const&) = delete;

  quag::engine const& engine() const { return *engine_; }
  service_config const& config() const { return config_; }
  routing::pedestrian_graph const& graph() const { return *graph_; }
  retrieval::passage_store const& passages() const { return *passages_; }
  retrieval::vector_index const& index() const { return *index_; }

private:
  service_config config_;
  std::unique_ptr<routing::pedestrian_graph> graph_;
  std::unique_ptr<enrichment::spatial_index> features_;
  std::unique_ptr<geodata::gazetteer> places_;
  std::unique_ptr<geodata::air_quality_client> air_quality_;
  std::unique_ptr<retrieval::passage_store> passages_;
  std::unique_ptr<retrieval::embedder> encoder_;
  std::unique_ptr<retrieval::vector_index> index_;
  std::unique_ptr<quag::llm_client> llm_;
  std::unique_ptr<quag::intent_classifier> classifier_;
  std::unique_ptr<quag::engine> engine_;
};

// Embedding client selected by the configuration.
std::unique_ptr<retrieval::embedder> make_embedder(service_config const& config);

}  // namespace walkrag
