#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "walkrag/engine.hpp"

namespace walkrag::eval {

// One JSONL line of an evaluation dataset:
//   {"query": ..., "kind": "spatial"|"information",
//    "origin"?: ..., "destination"?: ..., "expected_pois"?: [...],
//    "expected_passage_id"?: ...}
// Spatial records need origin and destination. Information records belong to
// the conversation opened by the closest preceding spatial record.
struct eval_record {
  std::string query;
  quag::intent_kind kind = quag::intent_kind::information;
  std::string origin;
  std::string destination;
  std::vector<std::string> expected_pois;
  std::optional<std::string> expected_passage_id;
};

// Throws dataset_error naming the line on schema violations.
std::vector<eval_record> parse_dataset(std::istream& in);
std::vector<eval_record> load_dataset(std::string const& path);

enum class verdict { correct, partially_correct, incorrect };

std::string_view to_string(verdict v);

struct query_result {
  std::size_t index = 0;
  eval_record record;
  quag::intent_kind predicted = quag::intent_kind::information;
  verdict outcome = verdict::incorrect;
  std::string reason;  // empty for correct
  std::string answer;
};

struct verdict_counts {
  std::size_t correct = 0;
  std::size_t partially_correct = 0;
  std::size_t incorrect = 0;

  std::size_t total() const { return correct + partially_correct + incorrect; }
  void add(verdict v);
};

struct eval_report {
  std::vector<query_result> results;
  verdict_counts spatial;
  verdict_counts information;
  std::size_t classified_correctly = 0;
};

inline constexpr double kEndpointToleranceM = 100.0;

// Automated spatial checks on one answered turn:
//   incorrect          misclassified, no route (NotFound/TooFar/NoRoute),
//                      a discontinuous segment chain, or a route endpoint more
//                      than 100 m from the geocoded origin/destination, or a
//                      named POI in the answer lying beyond the POI buffer
//   partially_correct  payload instructions missing from the answer (omitted
//                      or collapsed steps), or an expected POI not attached
//   correct            otherwise
query_result judge_spatial(eval_record const& record, quag::turn_result const& turn,
                           quag::engine const& engine);

// Information checks: misclassified -> incorrect; with an expected passage id,
// correct iff it is among the retrieved passages; otherwise correct iff the
// answer was grounded in at least one passage.
query_result judge_information(eval_record const& record, quag::turn_result const& turn);

// Runs every record through the engine in dataset order.
eval_report run_eval(std::vector<eval_record> const& dataset, quag::engine const& engine);

void print_table(eval_report const& report, std::ostream& out);
nlohmann::ordered_json to_json(eval_report const& report);

}  // namespace walkrag::eval
