#include <doctest.h>

#include "test_support.hpp"
#include "walkrag/engine.hpp"
#include "walkrag/errors.hpp"
#include "walkrag/intent.hpp"
#include "walkrag/llm.hpp"
#include "walkrag/prompt.hpp"
#include "walkrag/runtime.hpp"

using namespace walkrag;
using namespace walkrag::quag;

namespace {

runtime& fixture_runtime() {
  static runtime rt{testing::fixture_service_config()};
  return rt;
}

geodata::gazetteer const& places() {
  static auto const g = geodata::gazetteer::load_file(testing::fixture("gazetteer.csv"));
  return g;
}

intent classify(std::string_view text) {
  rule_based_classifier c{places()};
  conversation_state state;
  return classify_intent(text, state, c);
}

struct canned_llm : llm_client {
  explicit canned_llm(std::string r) : reply(std::move(r)) {}
  std::string reply;
  std::string generate(std::string const&) override { return reply; }
};

struct failing_llm : llm_client {
  std::string generate(std::string const&) override { throw client_failure("connection refused"); }
};

// Returns the same parse for every utterance.
struct fixed_classifier : intent_classifier {
  explicit fixed_classifier(intent i) : parsed(std::move(i)) {}
  intent parsed;
  intent classify(std::string_view, conversation_state const&) override { return parsed; }
};

intent spatial(std::string origin, std::string destination) {
  intent i;
  i.kind = intent_kind::spatial;
  i.origin = std::move(origin);
  i.destination = std::move(destination);
  return i;
}

}  // namespace

TEST_CASE("rule classifier extracts route slots") {
  auto const a = classify("Suggest a walking route from Eiffel Tower to Louvre");
  CHECK(a.kind == intent_kind::spatial);
  CHECK(a.origin == "Eiffel Tower");
  CHECK(a.destination == "Louvre");
  CHECK(a.preferences.empty());

  auto const b = classify("How do I get to the Pantheon from Notre Dame, with parks and a museum?");
  CHECK(b.kind == intent_kind::spatial);
  CHECK(b.origin == "Notre Dame");
  CHECK(b.destination == "Pantheon");
  CHECK(b.preferences == std::vector<std::string>{"GreenArea", "museum"});
}

TEST_CASE("rule classifier keeps questions as information requests") {
  CHECK(classify("Tell me more about the Champs de Mars").kind == intent_kind::information);
  CHECK(classify("When was the Eiffel Tower built?").kind == intent_kind::information);
  // A route keyword with unknown places is not a route request.
  CHECK(classify("Walk from Atlantis to El Dorado").kind == intent_kind::information);
  CHECK_THROWS_AS(classify("   "), empty_utterance);
}

TEST_CASE("preference extraction") {
  CHECK(extract_preferences("quiet streets with trees and clean air") ==
        std::vector<std::string>{"GreenArea", "Pollution"});
  CHECK(extract_preferences("wheelchair friendly, past a gallery and a cafe") ==
        std::vector<std::string>{"Accessibility", "cafe", "gallery"});
  CHECK(extract_preferences("nothing special").empty());

  intent i;
  i.preferences = {"GreenArea", "museum"};
  CHECK(i.indicator_preferences() == std::set{walkability::indicator_kind::green_area});
  CHECK(i.poi_categories() == std::set<std::string>{"museum"});
}

TEST_CASE("llm classifier parses JSON and falls back to rules") {
  conversation_state state;
  canned_llm good{R"(Sure: {"kind": "spatial", "origin": "Louvre", "destination": "Invalides", "preferences": ["museum", "GreenArea", "museum"]})"};
  llm_classifier c1{good, places()};
  auto const a = c1.classify("anything", state);
  CHECK(a.kind == intent_kind::spatial);
  CHECK(a.origin == "Louvre");
  CHECK(a.destination == "Invalides");
  CHECK(a.preferences == std::vector<std::string>{"GreenArea", "museum"});

  canned_llm garbage{"I think this is a route."};
  llm_classifier c2{garbage, places()};
  auto const b = c2.classify("Walk from Eiffel Tower to Louvre", state);
  CHECK(b.kind == intent_kind::spatial);
  CHECK(b.destination == "Louvre");

  failing_llm down;
  llm_classifier c3{down, places()};
  CHECK(c3.classify("Tell me about Rue Cler", state).kind == intent_kind::information);
}

TEST_CASE("passage prompt numbering and the no-context notice") {
  auto const t = prompt_templates::defaults();
  std::vector<retrieved_passage> passages{{"p-a", "Alpha text.", 0.9, 1}, {"p-b", "Beta text.", 0.5, 2}};
  auto const prompt = assemble_prompt(passages, "what is alpha?", t);
  CHECK(prompt.find("[1]") != std::string::npos);
  CHECK(prompt.find("[2]") != std::string::npos);
  CHECK(prompt.find("p-a") < prompt.find("p-b"));
  CHECK(prompt.find("what is alpha?") != std::string::npos);
  CHECK(prompt.find(kNoContextNotice) == std::string::npos);
  auto const block = find_fenced_block(prompt);
  REQUIRE(block);
  CHECK(block->tag == "passages");
  CHECK(block->body.find("Alpha text.") != std::string::npos);

  auto const empty = assemble_prompt(std::vector<retrieved_passage>{}, "what is alpha?", t);
  CHECK(empty.find(kNoContextNotice) != std::string::npos);
}

TEST_CASE("route prompt embeds the payload verbatim") {
  route_payload p;
  p.origin = "A";
  p.destination = "B";
  p.instructions = {{routing::instruction_kind::arrive, "Arrive at your destination", 0.0}};
  auto const prompt = assemble_prompt(p, "walk from A to B", prompt_templates::defaults());
  auto const block = find_fenced_block(prompt);
  REQUIRE(block);
  CHECK(block->tag == "json");
  CHECK(parse_payload(block->body + "\n").origin == "A");
}

TEST_CASE("prompt templates load from a directory") {
  testing::scratch_dir dir;
  testing::write_file(dir.file("spatial_v1.txt"), "S {{context}} {{utterance}}\n");
  testing::write_file(dir.file("information_v1.txt"), "I {{notice}}{{context}} {{utterance}}\n");
  auto const t = prompt_templates::load_dir(dir.path().string());
  CHECK(t.spatial.starts_with("S "));
  CHECK(t.information.starts_with("I "));
  CHECK_THROWS(prompt_templates::load_dir(dir.file("missing")));
}

TEST_CASE("mock llm restates the route and is deterministic") {
  auto const& eng = fixture_runtime().engine();
  conversation_state state;
  auto const turn = eng.process_turn(state, "Walk from Eiffel Tower to Champ de Mars");
  REQUIRE(turn.route);
  CHECK_FALSE(turn.error_code);
  mock_llm_client mock;
  CHECK(mock.generate(turn.prompt) == turn.answer);
  CHECK(mock.generate(turn.prompt) == mock.generate(turn.prompt));
  for (auto const& i : turn.route->payload.instructions) {
    CHECK(turn.answer.find(i.text) != std::string::npos);
  }
  CHECK(turn.answer.find("Walkability score:") != std::string::npos);
  for (auto const& s : turn.route->payload.segments) {
    for (auto const& poi : s.pois) {
      CHECK(turn.answer.find(poi.name) != std::string::npos);
    }
  }
  REQUIRE(state.route);
  CHECK(state.turns.size() == 1);
  REQUIRE(turn.selected);
  CHECK(turn.selected->nodes.front() != turn.selected->nodes.back());
}

TEST_CASE("information turns retrieve top-3 passages") {
  auto const& eng = fixture_runtime().engine();
  conversation_state state;
  auto const turn = eng.process_turn(state, "Tell me more about the Champs de Mars");
  CHECK(turn.parsed.kind == intent_kind::information);
  REQUIRE(turn.passages);
  CHECK(turn.passages->size() == 3);
  CHECK(turn.answer.find("[1]") != std::string::npos);
  auto const info = eng.handle_information("Tell me more about the Champs de Mars");
  CHECK(info.grounded);
}

TEST_CASE("spatial failures become error answers") {
  auto const& base = fixture_runtime().engine();
  struct expect {
    intent request;
    char const* code;
  };
  for (auto const& [request, code] : {expect{spatial("Atlantis", "Louvre"), "NotFound"},
                                      expect{spatial("Louvre", "Ile Isolee"), "NoRoute"},
                                      expect{spatial("Bois Lointain", "Louvre"), "TooFar"}}) {
    fixed_classifier c{request};
    auto services = base.services();
    services.classifier = &c;
    quag::engine eng{services, base.options()};
    conversation_state state;
    auto const turn = eng.process_turn(state, "walk please");
    REQUIRE(turn.error_code);
    CHECK(*turn.error_code == code);
    CHECK_FALSE(turn.route);
    CHECK_FALSE(turn.answer.empty());
    CHECK_FALSE(state.route);
  }
  CHECK_THROWS_AS(base.handle_spatial(spatial("Atlantis", "Louvre")), not_found);
  CHECK_THROWS_AS(base.handle_spatial(spatial("Louvre", "Ile Isolee")), no_route);
  CHECK_THROWS_AS(base.handle_spatial(spatial("Bois Lointain", "Louvre")), too_far);
}

TEST_CASE("llm failure yields the retry message") {
  auto const& base = fixture_runtime().engine();
  failing_llm down;
  auto services = base.services();
  services.llm = &down;
  quag::engine eng{services, base.options()};
  conversation_state state;
  auto const turn = eng.process_turn(state, "Walk from Eiffel Tower to Louvre");
  REQUIRE(turn.error_code);
  CHECK(*turn.error_code == "ClientFailure");
  CHECK(turn.answer == kRetryMessage);
}

TEST_CASE("preferences reshape the weights") {
  auto const& eng = fixture_runtime().engine();
  auto request = spatial("Eiffel Tower", "Louvre");
  request.preferences = {"GreenArea"};
  auto const r = eng.handle_spatial(request);
  for (auto const& ind : r.route.payload.indicators) {
    CHECK(ind.w == (ind.kind == "GreenArea" ? 0.4 : 0.2));
  }
  CHECK(r.candidates.size() <= 3);
  CHECK_FALSE(r.candidates.empty());
}

TEST_CASE("turn log round trip") {
  testing::scratch_dir dir;
  auto const& eng = fixture_runtime().engine();
  conversation_state state;
  auto const path = dir.file("s.jsonl");
  auto const t1 = eng.process_turn(state, "Walk from Eiffel Tower to Louvre");
  append_turn_log(path, state.turns.back(), t1.route);
  auto const t2 = eng.process_turn(state, "Tell me about the Louvre");
  append_turn_log(path, state.turns.back(), t2.route);

  auto const loaded = load_turn_log(path, "s");
  CHECK(loaded.session_id == "s");
  REQUIRE(loaded.turns.size() == 2);
  CHECK(loaded.turns[0].answer == state.turns[0].answer);
  CHECK(loaded.turns[1].kind == intent_kind::information);
  REQUIRE(loaded.route);
  CHECK(serialize_payload(loaded.route->payload) == serialize_payload(state.route->payload));
  CHECK(loaded.route->geometry.size() == state.route->geometry.size());
  CHECK(to_json(*loaded.route) == to_json(*state.route));
}
