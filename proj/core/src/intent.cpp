#include "walkrag/intent.hpp"

#include <algorithm>
#include <regex>

#include <nlohmann/json.hpp>

#include "walkrag/errors.hpp"
#include "walkrag/llm.hpp"

namespace walkrag::quag {

namespace {

struct keyword_rule {
  char const* pattern;
  char const* preference;
};

// Matched against the lowercased utterance with the place slots removed.
keyword_rule const kPreferenceRules[] = {
    {R"(\b(green|greenery|parks?|gardens?|trees?|nature|leafy)\b)", "GreenArea"},
    {R"(\b(wheelchair|accessible|accessibility|step-free|stroller|mobility)\b)", "Accessibility"},
    {R"(\b(sidewalks?|pavements?|pedestrian|footways?|footpaths?)\b)", "Sidewalk"},
    {R"(\b(pollution|polluted|clean air|air quality|less traffic)\b)", "Pollution"},
    {R"(\bmuseums?\b)", "museum"},
    {R"(\bgaller(y|ies)\b)", "gallery"},
    {R"(\b(viewpoints?|views?|panoramas?)\b)", "viewpoint"},
    {R"(\b(artworks?|sculptures?|street art)\b)", "artwork"},
    {R"(\b(attractions?|landmarks?|sights?|sightseeing)\b)", "attraction"},
    {R"(\bhotels?\b)", "hotel"},
    {R"(\b(cafes?|caf\xc3\xa9s?|coffee)\b)", "cafe"},
};

std::regex const kRouteKeyword{
    R"(\b(route|routes|walk|walking|itinerary|itineraries|directions|path|get to|go to|get from|go from|take me|navigate|stroll|head to)\b)",
    std::regex::icase};

std::string lowercase(std::string_view s) {
  std::string out{s};
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') {
      c = static_cast<char>(c - 'A' + 'a');
    }
  }
  return out;
}

std::string trim(std::string_view s) {
  auto const first = s.find_first_not_of(" \t\r\n\"'");
  if (first == std::string_view::npos) {
    return {};
  }
  auto const last = s.find_last_not_of(" \t\r\n\"'");
  return std::string{s.substr(first, last - first + 1)};
}

// Positions of `word` as a whole word (ASCII boundaries).
std::vector<std::size_t> word_positions(std::string const& lower, std::string_view word) {
  std::vector<std::size_t> out;
  auto const is_alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); };
  for (auto pos = lower.find(word); pos != std::string::npos; pos = lower.find(word, pos + 1)) {
    auto const before_ok = pos == 0 || !is_alpha(lower[pos - 1]);
    auto const end = pos + word.size();
    auto const after_ok = end >= lower.size() || !is_alpha(lower[end]);
    if (before_ok && after_ok) {
      out.push_back(pos);
    }
  }
  return out;
}

// A trailing slot ends at punctuation or at a clause that introduces
// preferences.
std::string cut_tail(std::string_view tail) {
  static constexpr std::string_view kStops[] = {
      ",", ".", "?", "!", ";", " with ", " via ", " passing ", " through ", " that ",
      " which ", " and ", " avoiding ", " prefer", " along ", " while ", " please"};
  auto const lower = lowercase(tail);
  auto end = tail.size();
  for (auto const stop : kStops) {
    if (auto const p = lower.find(stop); p != std::string::npos) {
      end = std::min(end, p);
    }
  }
  return trim(tail.substr(0, end));
}

// Resolves a slot against the gazetteer, also trying without a leading
// article. Returns the variant that matched.
std::optional<std::string> resolve_slot(std::string const& slot, geodata::gazetteer const& places) {
  auto text = trim(slot);
  if (text.empty()) {
    return std::nullopt;
  }
  if (places.find(text)) {
    return text;
  }
  auto const lower = lowercase(text);
  for (std::string_view const article : {"the ", "la ", "le ", "les ", "l'"}) {
    if (lower.starts_with(article)) {
      auto stripped = trim(std::string_view{text}.substr(article.size()));
      if (places.find(stripped)) {
        return stripped;
      }
    }
  }
  return std::nullopt;
}

std::string remove_all(std::string text, std::string const& needle) {
  if (needle.empty()) {
    return text;
  }
  auto lower = lowercase(text);
  auto const n = lowercase(needle);
  for (auto p = lower.find(n); p != std::string::npos; p = lower.find(n)) {
    text.erase(p, n.size());
    lower.erase(p, n.size());
  }
  return text;
}

}  // namespace

std::string_view to_string(intent_kind kind) {
  return kind == intent_kind::spatial ? "spatial" : "information";
}

intent_kind intent_kind_from_string(std::string_view text) {
  auto const lower = lowercase(text);
  if (lower == "spatial") return intent_kind::spatial;
  if (lower == "information" || lower == "info") return intent_kind::information;
  throw std::invalid_argument("unknown intent kind '" + std::string{text} + "'");
}

std::set<walkability::indicator_kind> intent::indicator_preferences() const {
  std::set<walkability::indicator_kind> out;
  for (auto const& p : preferences) {
    for (auto const k : walkability::kIndicators) {
      if (walkability::to_string(k) == p) {
        out.insert(k);
      }
    }
  }
  return out;
}

std::set<std::string> intent::poi_categories() const {
  std::set<std::string> out;
  for (auto const& p : preferences) {
    auto const is_indicator = std::any_of(walkability::kIndicators.begin(), walkability::kIndicators.end(),
                                          [&](auto k) { return walkability::to_string(k) == p; });
    if (!is_indicator) {
      out.insert(p);
    }
  }
  return out;
}

std::vector<std::string> extract_preferences(std::string_view text) {
  static auto const rules = [] {
    std::vector<std::pair<std::regex, std::string>> compiled;
    for (auto const& r : kPreferenceRules) {
      compiled.emplace_back(std::regex{r.pattern, std::regex::icase}, r.preference);
    }
    return compiled;
  }();
  auto const lower = lowercase(text);
  std::set<std::string> found;
  for (auto const& [re, pref] : rules) {
    if (std::regex_search(lower, re)) {
      found.insert(pref);
    }
  }
  return {found.begin(), found.end()};
}

intent rule_based_classifier::classify(std::string_view utterance, conversation_state const&) {
  std::string const text{utterance};
  intent out;
  if (!std::regex_search(text, kRouteKeyword)) {
    return out;
  }
  auto const lower = lowercase(text);
  auto const froms = word_positions(lower, "from");
  auto const tos = word_positions(lower, "to");

  auto accept = [&](std::optional<std::string> origin, std::optional<std::string> dest) {
    if (!origin || !dest) {
      return false;
    }
    out.kind = intent_kind::spatial;
    out.origin = *origin;
    out.destination = *dest;
    auto rest = remove_all(remove_all(text, out.origin), out.destination);
    out.preferences = extract_preferences(rest);
    return true;
  };

  // "... from X to Y ..."
  for (auto const f : froms) {
    for (auto const t : tos) {
      if (t <= f + 4) {
        continue;
      }
      auto const origin = text.substr(f + 4, t - (f + 4));
      if (accept(resolve_slot(origin, *places_),
                 resolve_slot(cut_tail(std::string_view{text}.substr(t + 2)), *places_))) {
        return out;
      }
    }
  }
  // "... to Y from X ..."
  for (auto const t : tos) {
    for (auto const f : froms) {
      if (f <= t + 2) {
        continue;
      }
      auto const dest = text.substr(t + 2, f - (t + 2));
      if (accept(resolve_slot(cut_tail(std::string_view{text}.substr(f + 4)), *places_),
                 resolve_slot(dest, *places_))) {
        return out;
      }
    }
  }
  return intent{};
}

std::string llm_classifier::classification_prompt(std::string_view utterance) {
  return "Classify the user utterance for a walking-itinerary assistant.\n"
         "Reply with one JSON object and nothing else:\n"
         "{\"kind\": \"spatial\" | \"information\", \"origin\": string, \"destination\": string, "
         "\"preferences\": [string]}\n"
         "Use \"spatial\" only when the user asks for a new walking route between two named "
         "places; origin and destination are the place names exactly as written.\n"
         "Preferences may contain Sidewalk, Pollution, GreenArea, Accessibility or lowercase "
         "POI categories such as museum.\n"
         "UTTERANCE: " +
         std::string{utterance} + "\n";
}

intent llm_classifier::classify(std::string_view utterance, conversation_state const& state) {
  std::string reply;
  try {
    reply = client_->generate(classification_prompt(utterance));
  } catch (client_failure const&) {
    return fallback_.classify(utterance, state);
  }
  auto const open = reply.find('{');
  auto const close = reply.rfind('}');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    return fallback_.classify(utterance, state);
  }
  try {
    auto const doc = nlohmann::json::parse(reply.substr(open, close - open + 1));
    intent out;
    out.kind = intent_kind_from_string(doc.at("kind").get<std::string>());
    if (out.kind == intent_kind::spatial) {
      out.origin = trim(doc.value("origin", std::string{}));
      out.destination = trim(doc.value("destination", std::string{}));
      if (out.origin.empty() || out.destination.empty()) {
        return fallback_.classify(utterance, state);
      }
      for (auto const& p : doc.value("preferences", std::vector<std::string>{})) {
        out.preferences.push_back(p);
      }
      std::sort(out.preferences.begin(), out.preferences.end());
      out.preferences.erase(std::unique(out.preferences.begin(), out.preferences.end()),
                            out.preferences.end());
    }
    return out;
  } catch (std::exception const&) {
    return fallback_.classify(utterance, state);
  }
}

intent classify_intent(std::string_view utterance, conversation_state const& state,
                       intent_classifier& classifier) {
  if (utterance.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw empty_utterance("utterance is empty");
  }
  return classifier.classify(utterance, state);
}

}  // namespace walkrag::quag
