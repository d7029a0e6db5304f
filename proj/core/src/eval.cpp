#include "walkrag/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "walkrag/errors.hpp"

namespace walkrag::eval {

namespace {

using nlohmann::ordered_json;

std::string field(ordered_json const& j, char const* key, std::size_t line_no) {
  auto const it = j.find(key);
  if (it == j.end()) {
    return {};
  }
  if (!it->is_string()) {
    throw dataset_error("line " + std::to_string(line_no) + ": '" + key + "' must be a string");
  }
  return it->get<std::string>();
}

bool contains_text(std::string const& haystack, std::string const& needle) {
  return !needle.empty() && haystack.find(needle) != std::string::npos;
}

std::size_t occurrences(std::string const& haystack, std::string const& needle) {
  std::size_t n = 0;
  for (auto p = haystack.find(needle); !needle.empty() && p != std::string::npos;
       p = haystack.find(needle, p + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace

std::string_view to_string(verdict v) {
  switch (v) {
    case verdict::correct: return "correct";
    case verdict::partially_correct: return "partially_correct";
    case verdict::incorrect: return "incorrect";
  }
  return "incorrect";
}

void verdict_counts::add(verdict v) {
  switch (v) {
    case verdict::correct: ++correct; break;
    case verdict::partially_correct: ++partially_correct; break;
    case verdict::incorrect: ++incorrect; break;
  }
}

std::vector<eval_record> parse_dataset(std::istream& in) {
  std::vector<eval_record> out;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    auto const j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw dataset_error("line " + std::to_string(line_no) + ": not a JSON object");
    }
    eval_record r;
    r.query = field(j, "query", line_no);
    if (r.query.empty()) {
      throw dataset_error("line " + std::to_string(line_no) + ": missing 'query'");
    }
    auto const kind = field(j, "kind", line_no);
    if (kind == "spatial") {
      r.kind = quag::intent_kind::spatial;
    } else if (kind == "information") {
      r.kind = quag::intent_kind::information;
    } else {
      throw dataset_error("line " + std::to_string(line_no) +
                          ": 'kind' must be spatial or information");
    }
    r.origin = field(j, "origin", line_no);
    r.destination = field(j, "destination", line_no);
    if (r.kind == quag::intent_kind::spatial && (r.origin.empty() || r.destination.empty())) {
      throw dataset_error("line " + std::to_string(line_no) +
                          ": spatial records need 'origin' and 'destination'");
    }
    if (auto const it = j.find("expected_pois"); it != j.end()) {
      if (!it->is_array()) {
        throw dataset_error("line " + std::to_string(line_no) + ": 'expected_pois' must be an array");
      }
      for (auto const& p : *it) {
        if (!p.is_string()) {
          throw dataset_error("line " + std::to_string(line_no) +
                              ": 'expected_pois' must hold strings");
        }
        r.expected_pois.push_back(p.get<std::string>());
      }
    }
    if (auto const id = field(j, "expected_passage_id", line_no); !id.empty()) {
      r.expected_passage_id = id;
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<eval_record> load_dataset(std::string const& path) {
  std::ifstream in{path};
  if (!in) {
    throw dataset_error("cannot open " + path);
  }
  return parse_dataset(in);
}

query_result judge_spatial(eval_record const& record, quag::turn_result const& turn,
                           quag::engine const& engine) {
  query_result r;
  r.record = record;
  r.predicted = turn.parsed.kind;
  r.answer = turn.answer;
  auto fail = [&r](std::string reason) {
    r.outcome = verdict::incorrect;
    r.reason = std::move(reason);
    return r;
  };

  if (turn.parsed.kind != quag::intent_kind::spatial) {
    return fail("classified as information");
  }
  if (turn.error_code) {
    return fail(*turn.error_code);
  }
  if (!turn.route || !turn.selected) {
    return fail("no route produced");
  }
  auto const& route = *turn.selected;
  if (!route.is_continuous()) {
    return fail("discontinuous segment chain");
  }

  auto const& services = engine.services();
  auto const& graph = *services.graph;
  auto const endpoint_ok = [&](std::string const& place, routing::node_id node) {
    auto const target = services.places->find(place);
    return target && haversine(*target, graph.position_of(node)) <= kEndpointToleranceM;
  };
  if (route.nodes.empty() || !endpoint_ok(record.origin, route.nodes.front())) {
    return fail("route does not start at " + record.origin);
  }
  if (!endpoint_ok(record.destination, route.nodes.back())) {
    return fail("route does not end at " + record.destination);
  }

  // Any named POI the answer mentions must sit within the POI buffer.
  auto const geometry = route.geometry();
  auto const buffer = engine.options().poi_buffer_m;
  std::vector<std::pair<std::string, double>> mentioned;
  for (auto const& f : services.features->features()) {
    if (f.kind != geodata::feature_kind::poi || !f.name || !contains_text(turn.answer, *f.name)) {
      continue;
    }
    auto const d = point_polyline_distance(f.pos, geometry);
    auto it = std::find_if(mentioned.begin(), mentioned.end(),
                           [&f](auto const& m) { return m.first == *f.name; });
    if (it == mentioned.end()) {
      mentioned.emplace_back(*f.name, d);
    } else {
      it->second = std::min(it->second, d);
    }
  }
  for (auto const& [name, d] : mentioned) {
    if (d > buffer) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "answer names %s %.0f m from the route", name.c_str(), d);
      return fail(buf);
    }
  }

  // Repeated instructions must be repeated in the answer too; a collapsed
  // run of identical steps counts as omitted.
  auto const& payload = turn.route->payload;
  std::map<std::string, std::size_t> expected;
  for (auto const& ins : payload.instructions) {
    ++expected[ins.text];
  }
  std::size_t missing = 0;
  for (auto const& [text, count] : expected) {
    auto const found = occurrences(turn.answer, text);
    missing += found < count ? count - found : 0;
  }
  if (missing > 0) {
    r.outcome = verdict::partially_correct;
    r.reason = std::to_string(missing) + " of " + std::to_string(payload.instructions.size()) +
               " steps omitted or collapsed";
    return r;
  }
  for (auto const& expected : record.expected_pois) {
    auto const found = std::any_of(turn.route->pois.begin(), turn.route->pois.end(),
                                   [&expected](auto const& p) { return p.name == expected; });
    if (!found) {
      r.outcome = verdict::partially_correct;
      r.reason = "expected POI " + expected + " not suggested";
      return r;
    }
  }
  r.outcome = verdict::correct;
  return r;
}

query_result judge_information(eval_record const& record, quag::turn_result const& turn) {
  query_result r;
  r.record = record;
  r.predicted = turn.parsed.kind;
  r.answer = turn.answer;
  r.outcome = verdict::incorrect;
  if (turn.parsed.kind != quag::intent_kind::information) {
    r.reason = "classified as spatial";
    return r;
  }
  if (turn.error_code) {
    r.reason = *turn.error_code;
    return r;
  }
  auto const passages = turn.passages.value_or(std::vector<quag::retrieved_passage>{});
  if (record.expected_passage_id) {
    auto const hit = std::any_of(passages.begin(), passages.end(), [&record](auto const& p) {
      return p.id == *record.expected_passage_id;
    });
    if (!hit) {
      r.reason = "expected passage " + *record.expected_passage_id + " not retrieved";
      return r;
    }
  } else if (passages.empty()) {
    r.reason = "no passages retrieved";
    return r;
  }
  r.outcome = verdict::correct;
  return r;
}

eval_report run_eval(std::vector<eval_record> const& dataset, quag::engine const& engine) {
  eval_report report;
  quag::conversation_state state;
  for (auto i = std::size_t{0}; i < dataset.size(); ++i) {
    auto const& record = dataset[i];
    if (record.kind == quag::intent_kind::spatial) {
      state = {};
      state.session_id = "eval-" + std::to_string(i);
    }
    auto const turn = engine.process_turn(state, record.query);
    auto result = record.kind == quag::intent_kind::spatial
                      ? judge_spatial(record, turn, engine)
                      : judge_information(record, turn);
    result.index = i;
    if (result.predicted == record.kind) {
      ++report.classified_correctly;
    }
    (record.kind == quag::intent_kind::spatial ? report.spatial : report.information)
        .add(result.outcome);
    report.results.push_back(std::move(result));
  }
  return report;
}

void print_table(eval_report const& report, std::ostream& out) {
  char line[512];
  std::snprintf(line, sizeof(line), "%-4s %-12s %-12s %-18s %s\n", "#", "expected", "predicted",
                "verdict", "query");
  out << line;
  for (auto const& r : report.results) {
    auto query = r.record.query;
    if (query.size() > 60) {
      query = query.substr(0, 57) + "...";
    }
    std::snprintf(line, sizeof(line), "%-4zu %-12s %-12s %-18s %s\n", r.index + 1,
                  std::string{quag::to_string(r.record.kind)}.c_str(),
                  std::string{quag::to_string(r.predicted)}.c_str(),
                  std::string{to_string(r.outcome)}.c_str(), query.c_str());
    out << line;
    if (!r.reason.empty()) {
      out << "     -> " << r.reason << '\n';
    }
  }
  out << '\n';
  std::snprintf(line, sizeof(line), "%-12s %8s %18s %10s %6s\n", "type", "correct",
                "partially_correct", "incorrect", "total");
  out << line;
  auto row = [&](char const* name, verdict_counts const& c) {
    std::snprintf(line, sizeof(line), "%-12s %8zu %18zu %10zu %6zu\n", name, c.correct,
                  c.partially_correct, c.incorrect, c.total());
    out << line;
  };
  row("spatial", report.spatial);
  row("information", report.information);
  out << "classification: " << report.classified_correctly << "/" << report.results.size() << '\n';
  out << "note: partially_correct flags steps missing from the answer (omitted or collapsed) "
         "or expected POIs not suggested; it is an automated stand-in for human labels.\n";
}

nlohmann::ordered_json to_json(eval_report const& report) {
  auto counts = [](verdict_counts const& c) {
    return ordered_json{{"correct", c.correct},
                        {"partially_correct", c.partially_correct},
                        {"incorrect", c.incorrect},
                        {"total", c.total()}};
  };
  auto results = ordered_json::array();
  for (auto const& r : report.results) {
    results.push_back({{"index", r.index},
                       {"query", r.record.query},
                       {"expected_kind", quag::to_string(r.record.kind)},
                       {"predicted_kind", quag::to_string(r.predicted)},
                       {"verdict", to_string(r.outcome)},
                       {"reason", r.reason}});
  }
  return {{"results", results},
          {"spatial", counts(report.spatial)},
          {"information", counts(report.information)},
          {"classification", {{"correct", report.classified_correctly},
                              {"total", report.results.size()}}}};
}

}  // namespace walkrag::eval
