#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "walkrag/vector_index.hpp"
#include "walkrag/walkability.hpp"

namespace walkrag {

// Everything the CLI and the HTTP service need to assemble an engine.
//
// Sources, later ones winning: built-in defaults, an INI-style key/value file
// (`[section]` headers, `key = value` lines, `#`/`;` comments), then
// environment variables named WALKRAG_<SECTION>_<KEY>, e.g.
// WALKRAG_WALKABILITY_TAU=4. Relative paths in a file resolve against the
// file's directory. The accepted keys are listed in README.md.
struct service_config {
  // [data]
  std::string map_path;
  std::string gazetteer_path;
  std::string air_quality_path;  // fixture JSON; empty = no air-quality feed
  std::string corpus_path;
  std::string index_path;      // optional prebuilt index
  std::string artifacts_dir;   // optional output of `walkrag ingest`
  std::string state_dir;       // optional per-session turn logs
  std::string prompt_dir;      // optional template override

  // [server]
  std::string host = "127.0.0.1";
  int port = 8080;

  // [retrieval]
  std::size_t k = 3;
  std::string encoder = "hashing";  // hashing | http
  std::size_t dimension = 256;
  std::string encoder_url;
  std::string encoder_model;
  retrieval::index_mode index_mode = retrieval::index_mode::exact;
  std::uint32_t nlist = 0;
  std::uint32_t nprobe = 0;  // 0 = calibrated at build time

  // [walkability]
  double tau = walkability::kDefaultTau;
  walkability::indicator_weights weights;
  double indicator_buffer_m = walkability::kDefaultIndicatorBufferM;

  // [enrichment]
  double poi_buffer_m = 200.0;

  // [routing]
  std::size_t alternatives = 3;
  double penalty_factor = 1.4;
  double max_snap_m = 500.0;

  // [llm]
  std::string llm_mode = "mock";  // mock | http
  std::string llm_url;
  std::string llm_model;
  int llm_timeout_s = 60;

  // [classifier]
  std::string classifier = "rules";  // rules | llm

  // [air_quality]
  std::string air_quality_mode = "fixture";  // fixture | http | none
  std::string air_quality_url;
  std::string air_quality_key;

  // Throws config_error naming the first offending key.
  void validate() const;
};

using environment = std::map<std::string, std::string>;

// WALKRAG_* variables of the current process.
environment process_environment();

// Throws config_error on unreadable files, unknown keys or bad values.
service_config load_config(std::optional<std::string> const& path, environment const& env);

// Defaults pointing at the bundled fixture city under `fixture_dir`.
service_config fixture_config(std::string const& fixture_dir);

}  // namespace walkrag
