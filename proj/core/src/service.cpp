#include "walkrag/service.hpp"

#include <filesystem>
#include <fstream>
#include <random>

#include <httplib.h>

#include "walkrag/errors.hpp"

namespace walkrag::service {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

response json_response(int status, ordered_json const& body) {
  return {status, body.dump(2) + "\n"};
}

ordered_json passages_json(std::vector<quag::retrieved_passage> const& passages) {
  auto out = ordered_json::array();
  for (auto const& p : passages) {
    out.push_back({{"id", p.id},
                   {"rank", p.rank},
                   {"score", quag::round_to(p.score, 6)},
                   {"text", p.text}});
  }
  return out;
}

bool valid_session_id(std::string const& id) {
  if (id.size() < 16 || id.size() > 64) {
    return false;
  }
  for (auto const c : id) {
    auto const ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z');
    if (!ok) {
      return false;
    }
  }
  return true;
}

}  // namespace

response error_response(int status, std::string const& code, std::string const& message) {
  return json_response(status, {{"error_code", code}, {"message", message}});
}

std::string new_session_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id(32, '0');
  for (auto& c : id) {
    c = kHex[rng() & 0xF];
  }
  return id;
}

ordered_json route_document(quag::active_route const& route) {
  auto coords = ordered_json::array();
  for (auto const& p : route.geometry) {
    coords.push_back({p.lon, p.lat});
  }
  auto features = ordered_json::array();
  features.push_back({{"type", "Feature"},
                      {"geometry", {{"type", "LineString"}, {"coordinates", coords}}},
                      {"properties", {{"role", "route"}}}});
  for (auto const& poi : route.pois) {
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "Point"}, {"coordinates", {poi.pos.lon, poi.pos.lat}}}},
                        {"properties",
                         {{"role", "poi"},
                          {"name", poi.name},
                          {"category", poi.category},
                          {"segment", poi.segment}}}});
  }
  return {{"payload", quag::to_json(route.payload)},
          {"geometry", {{"type", "FeatureCollection"}, {"features", features}}}};
}

session_manager::session_manager(quag::engine const& engine, std::string state_dir)
    : engine_(engine), state_dir_(std::move(state_dir)) {
  if (!state_dir_.empty()) {
    fs::create_directories(state_dir_);
  }
}

std::string session_manager::log_path(std::string const& id) const {
  return (fs::path{state_dir_} / (id + ".jsonl")).string();
}

std::string session_manager::create_session() {
  auto s = std::make_shared<session>();
  std::lock_guard lock{sessions_mutex_};
  std::string id;
  do {
    id = new_session_id();
  } while (sessions_.contains(id));
  s->state.session_id = id;
  sessions_.emplace(id, std::move(s));
  if (!state_dir_.empty()) {
    std::ofstream touch{log_path(id), std::ios::app};
  }
  return id;
}

std::shared_ptr<session_manager::session> session_manager::find(std::string const& id) {
  std::lock_guard lock{sessions_mutex_};
  if (auto const it = sessions_.find(id); it != sessions_.end()) {
    return it->second;
  }
  if (state_dir_.empty() || !valid_session_id(id) || !fs::exists(log_path(id))) {
    return nullptr;
  }
  auto s = std::make_shared<session>();
  s->state = quag::load_turn_log(log_path(id), id);
  sessions_.emplace(id, s);
  return s;
}

bool session_manager::has_session(std::string const& id) { return find(id) != nullptr; }

std::size_t session_manager::session_count() const {
  std::lock_guard lock{sessions_mutex_};
  return sessions_.size();
}

response session_manager::post_session() {
  return json_response(201, {{"session_id", create_session()}});
}

response session_manager::post_message(std::string const& session_id, std::string const& body) {
  auto const s = find(session_id);
  if (!s) {
    return error_response(404, "UnknownSession", "no session '" + session_id + "'");
  }

  std::string utterance;
  if (!body.empty()) {
    auto const doc = ordered_json::parse(body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      return error_response(400, "MalformedRequest", "body must be a JSON object");
    }
    if (auto const it = doc.find("utterance"); it != doc.end()) {
      if (!it->is_string()) {
        return error_response(400, "MalformedRequest", "'utterance' must be a string");
      }
      utterance = it->get<std::string>();
    }
  }

  std::lock_guard lock{s->mutex};
  quag::turn_result result;
  try {
    result = engine_.process_turn(s->state, utterance);
  } catch (empty_utterance const& e) {
    return error_response(400, e.code(), e.what());
  } catch (client_failure const& e) {
    return error_response(502, e.code(), e.what());
  } catch (error const& e) {
    return error_response(500, e.code(), e.what());
  }
  if (!state_dir_.empty()) {
    quag::append_turn_log(log_path(session_id), s->state.turns.back(), result.route);
  }
  if (result.error_code == "ClientFailure") {
    return error_response(502, "ClientFailure", result.answer);
  }

  ordered_json out{{"answer", result.answer}, {"intent_kind", quag::to_string(result.parsed.kind)}};
  if (result.route) {
    out["payload"] = quag::to_json(result.route->payload);
  }
  if (result.passages) {
    out["passages"] = passages_json(*result.passages);
  }
  if (result.error_code) {
    out["error_code"] = *result.error_code;
  }
  return json_response(200, out);
}

response session_manager::get_route(std::string const& session_id) {
  auto const s = find(session_id);
  if (!s) {
    return error_response(404, "UnknownSession", "no session '" + session_id + "'");
  }
  std::lock_guard lock{s->mutex};
  if (!s->state.route) {
    return error_response(404, "NoActiveRoute", "session has no active route");
  }
  return json_response(200, route_document(*s->state.route));
}

response session_manager::get_health(std::size_t corpus_size, std::size_t graph_nodes) const {
  return json_response(200, {{"status", "ok"}, {"corpus_size", corpus_size}, {"graph_nodes", graph_nodes}});
}

struct http_server::impl {
  httplib::Server server;
};

http_server::http_server(session_manager& sessions, std::size_t corpus_size, std::size_t graph_nodes)
    : impl_(std::make_unique<impl>()) {
  auto send = [](httplib::Response& res, response const& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  auto& srv = impl_->server;
  srv.Post("/api/sessions", [&sessions, send](httplib::Request const&, httplib::Response& res) {
    send(res, sessions.post_session());
  });
  srv.Post(R"(/api/sessions/([^/]+)/messages)",
           [&sessions, send](httplib::Request const& req, httplib::Response& res) {
             send(res, sessions.post_message(req.matches[1], req.body));
           });
  srv.Get(R"(/api/sessions/([^/]+)/route)",
          [&sessions, send](httplib::Request const& req, httplib::Response& res) {
            send(res, sessions.get_route(req.matches[1]));
          });
  srv.Get("/api/health", [&sessions, send, corpus_size, graph_nodes](httplib::Request const&,
                                                                       httplib::Response& res) {
    send(res, sessions.get_health(corpus_size, graph_nodes));
  });
  srv.set_exception_handler([send](httplib::Request const&, httplib::Response& res,
                                   std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (std::exception const& e) {
      send(res, error_response(500, "InternalError", e.what()));
    }
  });
  srv.set_error_handler([send](httplib::Request const& req, httplib::Response& res) {
    if (res.status == 404 && res.body.empty()) {
      send(res, error_response(404, "NotFound", "no endpoint " + req.method + " " + req.path));
    }
  });
}

http_server::~http_server() = default;

int http_server::bind(std::string const& host, int port) {
  if (port == 0) {
    return impl_->server.bind_to_any_port(host);
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void http_server::listen() { impl_->server.listen_after_bind(); }

void http_server::stop() { impl_->server.stop(); }

}  // namespace walkrag::service
