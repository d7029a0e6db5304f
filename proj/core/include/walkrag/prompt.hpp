#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "walkrag/payload.hpp"

namespace walkrag::quag {

inline constexpr std::string_view kNoContextNotice =
    "NOTICE: no retrieved context is available for this question. Say that the knowledge base "
    "has no answer instead of answering from memory.";

// Schematic prompt templates with {{notice}}, {{context}} and {{utterance}}
// placeholders. The defaults are compiled in from data/prompts/.
struct prompt_templates {
  std::string spatial;
  std::string information;

  static prompt_templates defaults();
  // Reads spatial_v1.txt and information_v1.txt from `dir`.
  static prompt_templates load_dir(std::string const& dir);
};

struct retrieved_passage {
  std::string id;
  std::string text;
  double score = 0.0;
  std::size_t rank = 0;
};

// Payload JSON goes into the fenced block verbatim.
std::string assemble_prompt(route_payload const& payload, std::string_view utterance,
                            prompt_templates const& templates);

// Passages are numbered [1..n] with their ids; an empty list produces the
// no-context notice.
std::string assemble_prompt(std::vector<retrieved_passage> const& passages,
                            std::string_view utterance, prompt_templates const& templates);

// Contents of the first fenced block and its info string ("json", "passages").
struct fenced_block {
  std::string tag;
  std::string body;
};
std::optional<fenced_block> find_fenced_block(std::string_view prompt);

}  // namespace walkrag::quag
