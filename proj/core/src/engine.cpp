#include "walkrag/engine.hpp"

#include <fstream>
#include <stdexcept>

#include "walkrag/errors.hpp"

namespace walkrag::quag {

namespace {

nlohmann::ordered_json point_json(lat_lon p) { return {p.lat, p.lon}; }

lat_lon point_from_json(nlohmann::ordered_json const& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace

engine::engine(engine_services services, engine_options options)
    : services_(services), options_(std::move(options)) {
  if (services_.graph == nullptr || services_.features == nullptr || services_.places == nullptr ||
      services_.index == nullptr || services_.passages == nullptr || services_.encoder == nullptr ||
      services_.llm == nullptr || services_.classifier == nullptr) {
    throw std::invalid_argument("engine services are incomplete");
  }
}

spatial_result engine::handle_spatial(intent const& request) const {
  auto const& graph = *services_.graph;
  auto const from = services_.places->geocode(request.origin);
  auto const to = services_.places->geocode(request.destination);
  auto const src = routing::snap_to_graph(from, graph, options_.routing.max_snap_m);
  auto const dst = routing::snap_to_graph(to, graph, options_.routing.max_snap_m);

  auto const routes = routing::alternative_routes(graph, src, dst, options_.routing.alternatives,
                                                  options_.routing.penalty_factor);

  auto scoring = options_.scoring;
  if (auto const preferred = request.indicator_preferences(); !preferred.empty()) {
    scoring.weights = walkability::indicator_weights::with_preferences(preferred);
  }

  spatial_result result;
  for (auto const& r : routes) {
    auto s = walkability::score_route(r, *services_.features, services_.air_quality, scoring);
    result.candidates.push_back({r, std::move(s)});
  }
  result.chosen = walkability::select_best_route(result.candidates);
  auto const& best = result.candidates[result.chosen];

  auto& payload = result.route.payload;
  payload.origin = request.origin;
  payload.destination = request.destination;
  payload.instructions = best.route.instructions();
  payload.ws = best.score.ws;
  payload.tau = best.score.tau;
  payload.flags = best.score.flags;
  for (auto const k : walkability::kIndicators) {
    payload.indicators.push_back({std::string{walkability::to_string(k)},
                                  best.score.c[walkability::slot(k)], best.score.weights[k]});
  }

  result.route.geometry = best.route.geometry();
  std::vector<std::vector<enrichment::attached_poi>> joined;
  if (!best.route.segments.empty()) {
    auto const corridor = enrichment::buffer_route(best.route, options_.poi_buffer_m);
    enrichment::preference_filter filter;
    filter.categories = request.poi_categories();
    joined = enrichment::spatial_join(corridor, *services_.features, filter);
  }
  auto const& features = services_.features->features();
  for (auto i = std::size_t{0}; i < best.route.segments.size(); ++i) {
    payload_segment seg;
    seg.index = i;
    seg.length_m = best.route.segments[i].length_m;
    for (auto const& poi : joined[i]) {
      seg.pois.push_back({poi.name, poi.category});
      result.route.pois.push_back({poi.name, poi.category, features[poi.feature].pos, i});
    }
    payload.segments.push_back(std::move(seg));
  }
  return result;
}

information_result engine::handle_information(std::string_view utterance, std::size_t k) const {
  information_result out;
  std::vector<retrieval::search_result> hits;
  try {
    hits = retrieval::search(utterance, k, *services_.index, *services_.encoder);
  } catch (encoder_failure const&) {
    return out;
  }
  for (auto const& h : hits) {
    auto const* p = services_.passages->find(h.passage_id);
    out.passages.push_back({h.passage_id, p != nullptr ? p->text : std::string{}, h.score, h.rank});
  }
  out.grounded = !out.passages.empty();
  return out;
}

turn_result engine::process_turn(conversation_state& state, std::string_view utterance) const {
  turn_result result;
  result.parsed = classify_intent(utterance, state, *services_.classifier);

  if (result.parsed.kind == intent_kind::spatial) {
    try {
      auto spatial = handle_spatial(result.parsed);
      result.prompt = assemble_prompt(spatial.route.payload, utterance, options_.templates);
      result.route = std::move(spatial.route);
      result.selected = std::move(spatial.candidates[spatial.chosen].route);
    } catch (not_found const& e) {
      result.error_code = e.code();
      result.answer = "I could not find a place called '" + e.name() +
                      "'. Could you give me the name of a nearby landmark or street?";
    } catch (too_far const& e) {
      result.error_code = e.code();
      result.answer =
          "Sorry, one of those places is too far from any walkable street I know, so I cannot "
          "suggest a route.";
    } catch (no_route const& e) {
      result.error_code = e.code();
      result.answer = "Sorry, I could not find a continuous walking route between " +
                      result.parsed.origin + " and " + result.parsed.destination + ".";
    }
  } else {
    auto info = handle_information(utterance);
    result.prompt = assemble_prompt(info.passages, utterance, options_.templates);
    result.passages = std::move(info.passages);
  }

  if (!result.prompt.empty()) {
    try {
      result.answer = generate_answer(result.prompt, *services_.llm);
    } catch (client_failure const& e) {
      result.error_code = e.code();
      result.answer = std::string{kRetryMessage};
    }
  }

  state.turns.push_back({std::string{utterance}, result.parsed.kind, result.answer, result.error_code});
  if (result.route) {
    state.route = result.route;
  }
  return result;
}

nlohmann::ordered_json to_json(active_route const& route) {
  auto geometry = nlohmann::ordered_json::array();
  for (auto const& p : route.geometry) {
    geometry.push_back(point_json(p));
  }
  auto pois = nlohmann::ordered_json::array();
  for (auto const& p : route.pois) {
    pois.push_back({{"name", p.name},
                    {"category", p.category},
                    {"pos", point_json(p.pos)},
                    {"segment", p.segment}});
  }
  return {{"payload", to_json(route.payload)}, {"geometry", geometry}, {"pois", pois}};
}

active_route active_route_from_json(nlohmann::ordered_json const& j) {
  active_route r;
  r.payload = payload_from_json(j.at("payload"));
  for (auto const& p : j.at("geometry")) {
    r.geometry.push_back(point_from_json(p));
  }
  for (auto const& p : j.at("pois")) {
    r.pois.push_back({p.at("name").get<std::string>(), p.at("category").get<std::string>(),
                      point_from_json(p.at("pos")), p.at("segment").get<std::size_t>()});
  }
  return r;
}

void append_turn_log(std::string const& path, turn_record const& turn,
                     std::optional<active_route> const& route) {
  nlohmann::ordered_json line{{"utterance", turn.utterance},
                              {"intent", to_string(turn.kind)},
                              {"answer", turn.answer}};
  line["error"] = turn.error_code ? nlohmann::ordered_json(*turn.error_code) : nlohmann::ordered_json(nullptr);
  if (route) {
    line["route"] = to_json(*route);
  }
  std::ofstream out{path, std::ios::app};
  if (!out) {
    throw std::runtime_error("cannot append to turn log " + path);
  }
  out << line.dump() << '\n';
}

conversation_state load_turn_log(std::string const& path, std::string session_id) {
  conversation_state state;
  state.session_id = std::move(session_id);
  std::ifstream in{path};
  std::string text;
  while (std::getline(in, text)) {
    if (text.empty()) {
      continue;
    }
    auto const line = nlohmann::ordered_json::parse(text);
    turn_record t;
    t.utterance = line.at("utterance").get<std::string>();
    t.kind = intent_kind_from_string(line.at("intent").get<std::string>());
    t.answer = line.at("answer").get<std::string>();
    if (auto const& e = line.at("error"); !e.is_null()) {
      t.error_code = e.get<std::string>();
    }
    state.turns.push_back(std::move(t));
    if (line.contains("route")) {
      state.route = active_route_from_json(line.at("route"));
    }
  }
  return state;
}

}  // namespace walkrag::quag
