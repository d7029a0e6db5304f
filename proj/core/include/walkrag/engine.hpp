#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "walkrag/air_quality.hpp"
#include "walkrag/corpus.hpp"
#include "walkrag/embedder.hpp"
#include "walkrag/enrichment.hpp"
#include "walkrag/gazetteer.hpp"
#include "walkrag/graph.hpp"
#include "walkrag/intent.hpp"
#include "walkrag/llm.hpp"
#include "walkrag/payload.hpp"
#include "walkrag/prompt.hpp"
#include "walkrag/router.hpp"
#include "walkrag/spatial_index.hpp"
#include "walkrag/vector_index.hpp"
#include "walkrag/walkability.hpp"

namespace walkrag::quag {

inline constexpr std::size_t kDefaultTopK = 3;
inline constexpr double kDefaultPoiBufferM = 200.0;

struct poi_marker {
  std::string name;
  std::string category;
  lat_lon pos;
  std::size_t segment = 0;
};

// The route last recommended in a session, with what the map view needs.
struct active_route {
  route_payload payload;
  std::vector<lat_lon> geometry;
  std::vector<poi_marker> pois;
};

struct turn_record {
  std::string utterance;
  intent_kind kind = intent_kind::information;
  std::string answer;
  std::optional<std::string> error_code;
};

struct conversation_state {
  std::string session_id;
  std::vector<turn_record> turns;
  std::optional<active_route> route;
};

struct engine_options {
  routing::routing_options routing;
  walkability::scoring_options scoring;  // weights = defaults without preferences
  double poi_buffer_m = kDefaultPoiBufferM;
  std::size_t top_k = kDefaultTopK;
  prompt_templates templates = prompt_templates::defaults();
};

// Non-owning view of the loaded data and pluggable clients.
struct engine_services {
  routing::pedestrian_graph const* graph = nullptr;
  enrichment::spatial_index const* features = nullptr;
  geodata::gazetteer const* places = nullptr;
  geodata::air_quality_client* air_quality = nullptr;  // optional
  retrieval::passage_store const* passages = nullptr;
  retrieval::vector_index const* index = nullptr;
  retrieval::embedder* encoder = nullptr;
  llm_client* llm = nullptr;
  intent_classifier* classifier = nullptr;
};

struct spatial_result {
  active_route route;
  std::vector<walkability::scored_route> candidates;
  std::size_t chosen = 0;
};

struct information_result {
  std::vector<retrieved_passage> passages;
  bool grounded = false;
};

struct turn_result {
  intent parsed;
  std::string answer;
  std::optional<active_route> route;
  std::optional<routing::route_candidate> selected;  // the candidate behind `route`
  std::optional<std::vector<retrieved_passage>> passages;
  std::optional<std::string> error_code;  // "NotFound", "NoRoute", "TooFar", "ClientFailure"
  std::string prompt;  // empty when no generation happened
};

inline constexpr std::string_view kRetryMessage =
    "Sorry, the answer could not be generated right now. Please try again in a moment.";

class engine {
public:
  engine(engine_services services, engine_options options);

  // geocode -> snap -> alternatives -> score -> select -> enrich -> payload.
  // Throws not_found, too_far and no_route.
  spatial_result handle_spatial(intent const& request) const;

  // Top-k passages; an empty index or an unencodable query is ungrounded.
  information_result handle_information(std::string_view utterance, std::size_t k) const;
  information_result handle_information(std::string_view utterance) const {
    return handle_information(utterance, options_.top_k);
  }

  // Whole turn: classify, dispatch, prompt, generate, and record into
  // `state`. Throws empty_utterance; other failures are reported through
  // turn_result::error_code with a user-facing answer.
  turn_result process_turn(conversation_state& state, std::string_view utterance) const;

  engine_services const& services() const { return services_; }
  engine_options const& options() const { return options_; }

private:
  engine_services services_;
  engine_options options_;
};

// Returns the client's answer; throws client_failure.
inline std::string generate_answer(std::string const& prompt, llm_client& client) {
  return client.generate(prompt);
}

// Append-only JSONL turn log for one session.
void append_turn_log(std::string const& path, turn_record const& turn,
                     std::optional<active_route> const& route);
conversation_state load_turn_log(std::string const& path, std::string session_id);

nlohmann::ordered_json to_json(active_route const& route);
active_route active_route_from_json(nlohmann::ordered_json const& j);

}  // namespace walkrag::quag
