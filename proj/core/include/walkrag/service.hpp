#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "walkrag/engine.hpp"

namespace walkrag::service {

// Transport-independent reply: status code plus JSON body text.
struct response {
  int status = 200;
  std::string body;
};

// Session store and request handlers behind the REST API. Handlers are safe
// to call from many threads; turns of one session run one at a time.
class session_manager {
public:
  // `state_dir` (optional) holds one append-only `<session>.jsonl` log per
  // session; sessions found there are reloaded lazily on first access.
  explicit session_manager(quag::engine const& engine, std::string state_dir = {});

  std::string create_session();
  bool has_session(std::string const& id);
  std::size_t session_count() const;

  response post_session();
  response post_message(std::string const& session_id, std::string const& body);
  response get_route(std::string const& session_id);
  response get_health(std::size_t corpus_size, std::size_t graph_nodes) const;

private:
  struct session {
    std::mutex mutex;
    quag::conversation_state state;
  };

  std::shared_ptr<session> find(std::string const& id);
  std::string log_path(std::string const& id) const;

  quag::engine const& engine_;
  std::string state_dir_;
  mutable std::mutex sessions_mutex_;
  std::unordered_map<std::string, std::shared_ptr<session>> sessions_;
};

// {error_code, message} body.
response error_response(int status, std::string const& code, std::string const& message);

// Route body served by GET /api/sessions/{id}/route: the payload plus a
// GeoJSON FeatureCollection holding the LineString and one Point per POI.
nlohmann::ordered_json route_document(quag::active_route const& route);

// Random session id: 32 lowercase hex characters.
std::string new_session_id();

// Blocking HTTP/1.1 server exposing the four endpoints.
class http_server {
public:
  http_server(session_manager& sessions, std::size_t corpus_size, std::size_t graph_nodes);
  ~http_server();

  // Binds to `port` (0 picks a free port) and returns the bound port.
  int bind(std::string const& host, int port);
  // Serves until stop() is called.
  void listen();
  void stop();

private:
  struct impl;
  std::unique_ptr<impl> impl_;
};

}  // namespace walkrag::service
