// walkrag: offline operation of the engine (ingest, index, route, ask,
// serve, eval).
//
// Exit codes: 0 ok, 1 input or runtime error, 2 usage error or missing file,
// 3 unknown place, 4 no route, 5 place too far from the street network.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "walkrag/config.hpp"
#include "walkrag/corpus.hpp"
#include "walkrag/embedder.hpp"
#include "walkrag/errors.hpp"
#include "walkrag/eval.hpp"
#include "walkrag/runtime.hpp"
#include "walkrag/service.hpp"
#include "walkrag/vector_index.hpp"

namespace fs = std::filesystem;

namespace {

enum exit_code : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kNotFound = 3,
  kNoRoute = 4,
  kTooFar = 5,
};

struct global_options {
  std::string config_path;
  bool verbose = false;
};

walkrag::service_config resolve_config(global_options const& g) {
  auto env = walkrag::process_environment();
  std::optional<std::string> path;
  if (!g.config_path.empty()) {
    path = g.config_path;
  } else if (auto const it = env.find("WALKRAG_CONFIG"); it != env.end()) {
    path = it->second;
  }
  if (!path) {
    throw walkrag::config_error("no configuration; pass --config or set WALKRAG_CONFIG");
  }
  if (!fs::exists(*path)) {
    throw walkrag::config_error("configuration file " + *path + " does not exist");
  }
  spdlog::debug("configuration: {}", *path);
  return walkrag::load_config(path, env);
}

bool require_file(std::string const& path, char const* what) {
  if (fs::is_regular_file(path)) {
    return true;
  }
  std::cerr << "error: " << what << " " << path << " does not exist\n";
  return false;
}

int cmd_ingest(std::string const& map_path, std::string const& gazetteer_path,
               std::string const& out_dir) {
  if (!require_file(map_path, "map extract")) {
    return kUsage;
  }
  if (!gazetteer_path.empty() && !require_file(gazetteer_path, "gazetteer")) {
    return kUsage;
  }
  try {
    if (!gazetteer_path.empty()) {
      // Validate before writing anything.
      auto const places = walkrag::geodata::gazetteer::load_file(gazetteer_path);
      fs::create_directories(out_dir);
      std::ofstream out{fs::path{out_dir} / "gazetteer.csv", std::ios::binary | std::ios::trunc};
      places.write_csv(out);
    }
    auto const s = walkrag::ingest_map(map_path, out_dir);
    std::cout << "nodes " << s.nodes << "\n"
              << "ways " << s.ways << "\n"
              << "graph_nodes " << s.graph_nodes << "\n"
              << "graph_edges " << s.graph_edges << "\n"
              << "features Sidewalk " << s.sidewalk << "\n"
              << "features GreenArea " << s.green_area << "\n"
              << "features Accessibility " << s.accessibility << "\n"
              << "features POI " << s.poi << "\n";
    return kOk;
  } catch (walkrag::malformed_input const& e) {
    std::cerr << "error: " << map_path;
    if (e.line() > 0) {
      std::cerr << ":" << e.line();
    }
    std::cerr << ": " << e.what() << "\n";
    return kFailure;
  }
}

int cmd_index(global_options const& g, std::string const& corpus_path, std::string const& out_path,
              std::optional<std::string> const& mode, std::optional<std::uint32_t> nlist,
              std::optional<std::uint32_t> nprobe) {
  if (!require_file(corpus_path, "corpus")) {
    return kUsage;
  }
  walkrag::service_config config;
  config.corpus_path = corpus_path;
  if (!g.config_path.empty() || walkrag::process_environment().contains("WALKRAG_CONFIG")) {
    config = resolve_config(g);
  }
  if (mode) {
    config.index_mode = walkrag::retrieval::index_mode_from_string(*mode);
  }
  walkrag::retrieval::ivf_params params;
  params.nlist = nlist.value_or(config.nlist);
  params.nprobe = nprobe.value_or(config.nprobe);

  auto const store = walkrag::retrieval::load_corpus_file(corpus_path);
  auto encoder = walkrag::make_embedder(config);
  auto const index = walkrag::retrieval::build_corpus_index(store, *encoder, config.index_mode, params);
  index.save_file(out_path);
  std::cout << "mode " << walkrag::retrieval::to_string(index.mode()) << "\n"
            << "dimension " << index.dimension() << "\n"
            << "count " << index.size() << "\n";
  return kOk;
}

int cmd_route(global_options const& g, std::string const& from, std::string const& to,
              std::vector<std::string> const& prefer) {
  walkrag::quag::intent request;
  request.kind = walkrag::quag::intent_kind::spatial;
  request.origin = from;
  request.destination = to;
  std::set<std::string> prefs;
  for (auto const& p : prefer) {
    auto mapped = walkrag::quag::extract_preferences(p);
    if (mapped.empty()) {
      // Accept canonical names as well ("GreenArea", "museum").
      for (auto const k : walkrag::walkability::kIndicators) {
        if (p == walkrag::walkability::to_string(k)) {
          mapped.emplace_back(p);
        }
      }
    }
    if (mapped.empty()) {
      std::cerr << "error: unknown preference '" << p << "'\n";
      return kUsage;
    }
    prefs.insert(mapped.begin(), mapped.end());
  }
  request.preferences.assign(prefs.begin(), prefs.end());

  walkrag::runtime rt{resolve_config(g)};
  try {
    auto const result = rt.engine().handle_spatial(request);
    std::cout << walkrag::quag::serialize_payload(result.route.payload);
    return kOk;
  } catch (walkrag::not_found const& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    return kNotFound;
  } catch (walkrag::no_route const& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    return kNoRoute;
  } catch (walkrag::too_far const& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    return kTooFar;
  }
}

int cmd_ask(global_options const& g, std::vector<std::string> const& utterances, bool json) {
  walkrag::runtime rt{resolve_config(g)};
  walkrag::quag::conversation_state state;
  state.session_id = "cli";
  for (auto const& u : utterances) {
    auto const result = rt.engine().process_turn(state, u);
    if (json) {
      nlohmann::ordered_json out{{"utterance", u},
                                 {"intent_kind", walkrag::quag::to_string(result.parsed.kind)},
                                 {"answer", result.answer}};
      if (result.route) {
        out["payload"] = walkrag::quag::to_json(result.route->payload);
      }
      if (result.passages) {
        auto passages = nlohmann::ordered_json::array();
        for (auto const& p : *result.passages) {
          passages.push_back({{"id", p.id}, {"rank", p.rank}, {"score", walkrag::quag::round_to(p.score, 6)}});
        }
        out["passages"] = passages;
      }
      if (result.error_code) {
        out["error_code"] = *result.error_code;
      }
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "[" << walkrag::quag::to_string(result.parsed.kind) << "] " << result.answer;
      if (!result.answer.empty() && result.answer.back() != '\n') {
        std::cout << "\n";
      }
    }
  }
  return kOk;
}

walkrag::service::http_server* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server != nullptr) {
    g_server->stop();
  }
}

int cmd_serve(global_options const& g, std::optional<std::string> const& host,
              std::optional<int> port) {
  auto config = resolve_config(g);
  if (host) {
    config.host = *host;
  }
  if (port) {
    config.port = *port;
  }
  walkrag::runtime rt{config};
  walkrag::service::session_manager sessions{rt.engine(), config.state_dir};
  walkrag::service::http_server server{sessions, rt.passages().size(), rt.graph().node_count()};
  auto const bound = server.bind(config.host, config.port);
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << "listening on http://" << config.host << ":" << bound << std::endl;
  server.listen();
  g_server = nullptr;
  return kOk;
}

int cmd_eval(global_options const& g, std::string const& dataset_path, bool json,
             std::string const& json_out) {
  if (!require_file(dataset_path, "dataset")) {
    return kUsage;
  }
  auto const dataset = walkrag::eval::load_dataset(dataset_path);
  walkrag::runtime rt{resolve_config(g)};
  auto const report = walkrag::eval::run_eval(dataset, rt.engine());
  if (json) {
    std::cout << walkrag::eval::to_json(report).dump(2) << "\n";
  } else {
    walkrag::eval::print_table(report, std::cout);
  }
  if (!json_out.empty()) {
    std::ofstream out{json_out, std::ios::binary | std::ios::trunc};
    out << walkrag::eval::to_json(report).dump(2) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"walkrag: walkable itinerary recommendation with retrieval-augmented answers"};
  app.require_subcommand(1);
  global_options g;
  app.add_option("--config", g.config_path, "Configuration file (INI); also WALKRAG_CONFIG");
  app.add_flag("-v,--verbose", g.verbose, "Log progress to stderr");

  std::string map_path, gazetteer_path, out_dir = "artifacts";
  auto* ingest = app.add_subcommand("ingest", "Parse a map extract into graph and feature artifacts");
  ingest->add_option("map", map_path, "OSM XML extract")->required();
  ingest->add_option("--gazetteer", gazetteer_path, "Gazetteer CSV to copy into the artifacts");
  ingest->add_option("-o,--out", out_dir, "Output directory");

  std::string corpus_path, index_out = "index.bin";
  std::optional<std::string> mode;
  std::optional<std::uint32_t> nlist, nprobe;
  auto* index = app.add_subcommand("index", "Embed a JSONL corpus into a vector index file");
  index->add_option("corpus", corpus_path, "Corpus JSONL")->required();
  index->add_option("-o,--out", index_out, "Index file");
  index->add_option("--mode", mode, "exact or approx")->check(CLI::IsMember({"exact", "approx"}));
  index->add_option("--nlist", nlist, "Clusters for approx mode (default sqrt(n))");
  index->add_option("--nprobe", nprobe, "Clusters probed per query in approx mode (0 = calibrate)");

  std::string from, to;
  std::vector<std::string> prefer;
  auto* route = app.add_subcommand("route", "Print the recommended route payload as JSON");
  route->add_option("--from", from, "Origin place name")->required();
  route->add_option("--to", to, "Destination place name")->required();
  route->add_option("--prefer", prefer, "Preference: green, accessible, sidewalk, pollution or a POI category");

  std::vector<std::string> utterances;
  bool ask_json = false;
  auto* ask = app.add_subcommand("ask", "Run utterances through one conversation");
  ask->add_option("utterance", utterances, "One or more utterances")->required();
  ask->add_flag("--json", ask_json, "Print full turn results as JSON");

  std::optional<std::string> host;
  std::optional<int> port;
  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--port", port, "Listen port (0 picks a free port)");

  std::string dataset_path, json_out;
  bool eval_json = false;
  auto* eval = app.add_subcommand("eval", "Evaluate a JSONL query dataset");
  eval->add_option("dataset", dataset_path, "Evaluation dataset JSONL")->required();
  eval->add_flag("--json", eval_json, "Print the report as JSON instead of a table");
  eval->add_option("--json-out", json_out, "Also write the JSON report to this file");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return kUsage;
  }

  spdlog::set_default_logger(spdlog::default_logger());
  spdlog::set_level(g.verbose ? spdlog::level::debug : spdlog::level::warn);

  try {
    if (*ingest) return cmd_ingest(map_path, gazetteer_path, out_dir);
    if (*index) return cmd_index(g, corpus_path, index_out, mode, nlist, nprobe);
    if (*route) return cmd_route(g, from, to, prefer);
    if (*ask) return cmd_ask(g, utterances, ask_json);
    if (*serve) return cmd_serve(g, host, port);
    if (*eval) return cmd_eval(g, dataset_path, eval_json, json_out);
  } catch (walkrag::duplicate_id const& e) {
    std::cerr << "error: " << e.code() << ": duplicate passage id " << e.id() << "\n";
    return kFailure;
  } catch (walkrag::malformed_line const& e) {
    std::cerr << "error: " << e.code() << ": line " << e.line_no() << ": " << e.what() << "\n";
    return kFailure;
  } catch (walkrag::error const& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    return kFailure;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
