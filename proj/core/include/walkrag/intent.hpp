#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "walkrag/gazetteer.hpp"
#include "walkrag/walkability.hpp"

namespace walkrag::quag {

enum class intent_kind { spatial, information };

std::string_view to_string(intent_kind kind);
intent_kind intent_kind_from_string(std::string_view text);

struct intent {
  intent_kind kind = intent_kind::information;
  std::string origin;       // spatial only, as written by the user
  std::string destination;  // spatial only
  // Canonical preference tokens: indicator names ("GreenArea", ...) and
  // lowercase POI categories ("museum", ...).
  std::vector<std::string> preferences;

  std::set<walkability::indicator_kind> indicator_preferences() const;
  std::set<std::string> poi_categories() const;
};

// Keyword table: green/park/garden/trees -> GreenArea,
// wheelchair/accessible -> Accessibility, sidewalk/pedestrian -> Sidewalk,
// pollution/"clean air"/"air quality" -> Pollution, and POI words
// (museum, gallery, viewpoint, artwork, attraction, hotel, cafe, ...) -> the
// matching tourism category. Output is de-duplicated and sorted.
std::vector<std::string> extract_preferences(std::string_view text);

struct conversation_state;

class intent_classifier {
public:
  virtual ~intent_classifier() = default;
  virtual intent classify(std::string_view utterance, conversation_state const& state) = 0;
};

// Spatial iff the utterance carries a route keyword (route, walk, itinerary,
// get to, ...) with "from X to Y" / "to Y from X" slots and both slots
// geocode; information otherwise.
class rule_based_classifier : public intent_classifier {
public:
  explicit rule_based_classifier(geodata::gazetteer const& places) : places_(&places) {}
  intent classify(std::string_view utterance, conversation_state const& state) override;

private:
  geodata::gazetteer const* places_;
};

class llm_client;

// Asks the LLM for {"kind", "origin", "destination", "preferences"} JSON.
// Unparseable replies fall back to the rule-based classifier.
class llm_classifier : public intent_classifier {
public:
  llm_classifier(llm_client& client, geodata::gazetteer const& places)
      : client_(&client), fallback_(places) {}
  intent classify(std::string_view utterance, conversation_state const& state) override;

  static std::string classification_prompt(std::string_view utterance);

private:
  llm_client* client_;
  rule_based_classifier fallback_;
};

// Throws empty_utterance for blank input, then delegates.
intent classify_intent(std::string_view utterance, conversation_state const& state,
                       intent_classifier& classifier);

}  // namespace walkrag::quag
