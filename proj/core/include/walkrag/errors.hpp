#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace walkrag {

// Base of every error raised by the engine. `code()` is the stable,
// machine-readable name surfaced in CLI output and HTTP error bodies.
class error : public std::runtime_error {
public:
  error(std::string code, std::string const& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  std::string const& code() const noexcept { return code_; }

private:
  std::string code_;
};

#define WALKRAG_SIMPLE_ERROR(name, code)                                 \
  class name : public error {                                            \
  public:                                                                \
    explicit name(std::string const& message) : error(code, message) {}  \
  };

// geodata
class malformed_input : public error {
public:
  malformed_input(long line, std::string const& reason)
      : error("MalformedInput", "line " + std::to_string(line) + ": " + reason),
        line_(line), reason_(reason) {}
  long line() const noexcept { return line_; }
  std::string const& reason() const noexcept { return reason_; }

private:
  long line_;
  std::string reason_;
};

class dangling_reference : public error {
public:
  dangling_reference(std::int64_t way_id, std::int64_t node_id)
      : error("DanglingReference", "way " + std::to_string(way_id) +
                                       " references missing node " +
                                       std::to_string(node_id)),
        way_id_(way_id), node_id_(node_id) {}
  std::int64_t way_id() const noexcept { return way_id_; }
  std::int64_t node_id() const noexcept { return node_id_; }

private:
  std::int64_t way_id_;
  std::int64_t node_id_;
};

WALKRAG_SIMPLE_ERROR(empty_graph, "EmptyGraph")
WALKRAG_SIMPLE_ERROR(unavailable, "Unavailable")

class not_found : public error {
public:
  explicit not_found(std::string name)
      : error("NotFound", "no place named '" + name + "'"), name_(std::move(name)) {}
  std::string const& name() const noexcept { return name_; }

private:
  std::string name_;
};

// routing
WALKRAG_SIMPLE_ERROR(too_far, "TooFar")
WALKRAG_SIMPLE_ERROR(no_route, "NoRoute")

// walkability
WALKRAG_SIMPLE_ERROR(empty_route, "EmptyRoute")
WALKRAG_SIMPLE_ERROR(invalid_weights, "InvalidWeights")
WALKRAG_SIMPLE_ERROR(no_candidates, "NoCandidates")

// retrieval
class malformed_line : public error {
public:
  malformed_line(std::size_t line_no, std::string const& reason)
      : error("MalformedLine", "line " + std::to_string(line_no) + ": " + reason),
        line_no_(line_no) {}
  std::size_t line_no() const noexcept { return line_no_; }

private:
  std::size_t line_no_;
};

class duplicate_id : public error {
public:
  explicit duplicate_id(std::string id)
      : error("DuplicateId", "duplicate passage id '" + id + "'"), id_(std::move(id)) {}
  std::string const& id() const noexcept { return id_; }

private:
  std::string id_;
};

WALKRAG_SIMPLE_ERROR(encoder_failure, "EncoderFailure")
WALKRAG_SIMPLE_ERROR(dimension_mismatch, "DimensionMismatch")
WALKRAG_SIMPLE_ERROR(index_format_error, "IndexFormatError")

// quag / service
WALKRAG_SIMPLE_ERROR(empty_utterance, "EmptyUtterance")
WALKRAG_SIMPLE_ERROR(client_failure, "ClientFailure")
WALKRAG_SIMPLE_ERROR(config_error, "ConfigError")
WALKRAG_SIMPLE_ERROR(dataset_error, "DatasetError")

#undef WALKRAG_SIMPLE_ERROR

}  // namespace walkrag
