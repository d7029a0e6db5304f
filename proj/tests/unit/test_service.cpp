#include <doctest.h>

#include <httplib.h>

#include <thread>

#include <nlohmann/json.hpp>

#include "test_support.hpp"
#include "walkrag/errors.hpp"
#include "walkrag/runtime.hpp"
#include "walkrag/service.hpp"

using namespace walkrag;
using namespace walkrag::service;
using nlohmann::json;

namespace {

runtime& fixture_runtime() {
  static runtime rt{testing::fixture_service_config()};
  return rt;
}

std::string utterance(std::string const& text) {
  return json{{"utterance", text}}.dump();
}

std::string open_session(session_manager& sm) {
  auto const r = sm.post_session();
  REQUIRE(r.status == 201);
  return json::parse(r.body).at("session_id").get<std::string>();
}

struct failing_llm : quag::llm_client {
  std::string generate(std::string const&) override { throw client_failure("timeout"); }
};

}  // namespace

TEST_CASE("sessions get distinct opaque ids") {
  session_manager sm{fixture_runtime().engine()};
  auto const a = open_session(sm);
  auto const b = open_session(sm);
  CHECK(a != b);
  CHECK(a.size() >= 16);
  CHECK(sm.session_count() == 2);
  CHECK(sm.has_session(a));
  CHECK_FALSE(sm.has_session("nope"));
  CHECK(new_session_id().size() == 32);
}

TEST_CASE("unknown sessions and bad bodies") {
  session_manager sm{fixture_runtime().engine()};
  auto const r1 = sm.post_message("missing", utterance("hi"));
  CHECK(r1.status == 404);
  CHECK(json::parse(r1.body)["error_code"] == "UnknownSession");
  CHECK(sm.get_route("missing").status == 404);

  auto const id = open_session(sm);
  CHECK(sm.post_message(id, "").status == 400);
  CHECK(json::parse(sm.post_message(id, utterance("  ")).body)["error_code"] == "EmptyUtterance");
  CHECK(json::parse(sm.post_message(id, "[1,2]").body)["error_code"] == "MalformedRequest");
  CHECK(sm.post_message(id, "{\"utterance\": 3}").status == 400);
  CHECK(sm.post_message(id, "{oops").status == 400);
}

TEST_CASE("route endpoint before and after a spatial turn") {
  session_manager sm{fixture_runtime().engine()};
  auto const id = open_session(sm);
  auto const none = sm.get_route(id);
  CHECK(none.status == 404);
  CHECK(json::parse(none.body)["error_code"] == "NoActiveRoute");

  auto const info = sm.post_message(id, utterance("Tell me about the Louvre"));
  CHECK(info.status == 200);
  auto const info_body = json::parse(info.body);
  CHECK(info_body["intent_kind"] == "information");
  CHECK(info_body["passages"].size() == 3);
  CHECK(sm.get_route(id).status == 404);

  auto const msg = sm.post_message(id, utterance("Walk from Eiffel Tower to Louvre"));
  REQUIRE(msg.status == 200);
  auto const body = json::parse(msg.body);
  CHECK(body["intent_kind"] == "spatial");
  CHECK(body["payload"]["payload_version"] == 1);
  CHECK_FALSE(body["answer"].get<std::string>().empty());

  auto const r1 = sm.get_route(id);
  auto const r2 = sm.get_route(id);
  REQUIRE(r1.status == 200);
  CHECK(r1.body == r2.body);

  auto const doc = json::parse(r1.body);
  CHECK(doc["payload"] == body["payload"]);
  auto const& features = doc["geometry"]["features"];
  CHECK(doc["geometry"]["type"] == "FeatureCollection");
  REQUIRE_FALSE(features.empty());
  auto const& line = features[0];
  CHECK(line["geometry"]["type"] == "LineString");
  CHECK(line["properties"]["role"] == "route");
  auto const& coords = line["geometry"]["coordinates"];

  // Vertices run origin -> destination; GeoJSON order is [lon, lat].
  auto const& places = *fixture_runtime().engine().services().places;
  auto const eiffel = places.geocode("Eiffel Tower");
  auto const louvre = places.geocode("Louvre");
  CHECK(coords.front()[0].get<double>() == doctest::Approx(eiffel.lon).epsilon(1e-9));
  CHECK(coords.front()[1].get<double>() == doctest::Approx(eiffel.lat).epsilon(1e-9));
  CHECK(coords.back()[0].get<double>() == doctest::Approx(louvre.lon).epsilon(1e-9));
  CHECK(coords.back()[1].get<double>() == doctest::Approx(louvre.lat).epsilon(1e-9));

  std::size_t poi_points = 0;
  for (auto const& seg : body["payload"]["segments"]) {
    poi_points += seg["pois"].size();
  }
  CHECK(features.size() == poi_points + 1);
  for (std::size_t i = 1; i < features.size(); ++i) {
    CHECK(features[i]["geometry"]["type"] == "Point");
    CHECK(features[i]["properties"]["role"] == "poi");
  }
}

TEST_CASE("route geometry matches the route vertices") {
  quag::conversation_state state;
  auto const turn = fixture_runtime().engine().process_turn(state, "Walk from Invalides to Pantheon");
  REQUIRE(turn.route);
  REQUIRE(turn.selected);
  auto const doc = route_document(*turn.route);
  auto const& coords = doc["geometry"]["features"][0]["geometry"]["coordinates"];
  auto const vertices = turn.selected->geometry();
  REQUIRE(coords.size() == vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    CHECK(coords[i][0].get<double>() == vertices[i].lon);
    CHECK(coords[i][1].get<double>() == vertices[i].lat);
  }
}

TEST_CASE("error codes flow into the message body") {
  session_manager sm{fixture_runtime().engine()};
  auto const id = open_session(sm);
  auto const r = sm.post_message(id, utterance("Walk from Louvre to Ile Isolee"));
  CHECK(r.status == 200);
  auto const body = json::parse(r.body);
  CHECK(body["error_code"] == "NoRoute");
  CHECK_FALSE(body.contains("payload"));
}

TEST_CASE("llm failure maps to 502") {
  auto const& base = fixture_runtime().engine();
  failing_llm down;
  auto services = base.services();
  services.llm = &down;
  quag::engine eng{services, base.options()};
  session_manager sm{eng};
  auto const id = open_session(sm);
  auto const r = sm.post_message(id, utterance("Tell me about the Louvre"));
  CHECK(r.status == 502);
  CHECK(json::parse(r.body)["error_code"] == "ClientFailure");
}

TEST_CASE("health") {
  session_manager sm{fixture_runtime().engine()};
  auto const r = sm.get_health(100, 86);
  CHECK(r.status == 200);
  auto const body = json::parse(r.body);
  CHECK(body["status"] == "ok");
  CHECK(body["corpus_size"] == 100);
  CHECK(body["graph_nodes"] == 86);
}

TEST_CASE("sessions survive a restart through the state directory") {
  testing::scratch_dir dir;
  std::string id;
  std::string route_body;
  {
    session_manager sm{fixture_runtime().engine(), dir.path().string()};
    id = open_session(sm);
    REQUIRE(sm.post_message(id, utterance("Walk from Eiffel Tower to Louvre")).status == 200);
    REQUIRE(sm.post_message(id, utterance("Tell me about the Louvre")).status == 200);
    route_body = sm.get_route(id).body;
  }
  session_manager restarted{fixture_runtime().engine(), dir.path().string()};
  CHECK(restarted.has_session(id));
  auto const r = restarted.get_route(id);
  CHECK(r.status == 200);
  CHECK(r.body == route_body);
}

TEST_CASE("live http server serves the four endpoints") {
  auto& rt = fixture_runtime();
  session_manager sm{rt.engine()};
  http_server server{sm, rt.passages().size(), rt.graph().node_count()};
  auto const port = server.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread thread{[&] { server.listen(); }};

  httplib::Client cli{"127.0.0.1", port};
  cli.set_read_timeout(30, 0);

  auto health = cli.Get("/api/health");
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(json::parse(health->body)["graph_nodes"] == 86);
  CHECK(json::parse(health->body)["corpus_size"] == 100);

  auto created = cli.Post("/api/sessions", "", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  auto const id = json::parse(created->body)["session_id"].get<std::string>();

  auto msg = cli.Post("/api/sessions/" + id + "/messages", utterance("Walk from Eiffel Tower to Louvre"),
                      "application/json");
  REQUIRE(msg);
  CHECK(msg->status == 200);
  CHECK(json::parse(msg->body)["payload"]["payload_version"] == 1);

  auto route = cli.Get("/api/sessions/" + id + "/route");
  REQUIRE(route);
  CHECK(route->status == 200);
  CHECK(route->body == sm.get_route(id).body);

  auto missing = cli.Get("/api/sessions/unknown/route");
  REQUIRE(missing);
  CHECK(missing->status == 404);

  auto bad = cli.Post("/api/sessions/" + id + "/messages", "", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);

  server.stop();
  thread.join();
}
