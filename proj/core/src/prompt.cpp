#include "walkrag/prompt.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "walkrag_prompts.hpp"

namespace walkrag::quag {

namespace {

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  for (auto p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size())) {
    s.replace(p, from.size(), to);
  }
}

std::string fill(std::string tmpl, std::string_view notice, std::string_view context,
                 std::string_view utterance) {
  if (notice.empty()) {
    replace_all(tmpl, "{{notice}}\n", "");
  }
  replace_all(tmpl, "{{notice}}", notice);
  // Context and utterance go in last so their text is never re-scanned for
  // placeholders.
  auto const at = tmpl.find("{{utterance}}");
  std::string utterance_line{utterance};
  replace_all(utterance_line, "\n", " ");
  if (at != std::string::npos) {
    tmpl.replace(at, std::string_view{"{{utterance}}"}.size(), utterance_line);
  }
  if (auto const c = tmpl.find("{{context}}"); c != std::string::npos) {
    tmpl.replace(c, std::string_view{"{{context}}"}.size(), context);
  }
  return tmpl;
}

std::string read_file(std::string const& path) {
  std::ifstream in{path};
  if (!in) {
    throw std::runtime_error("cannot read prompt template " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

prompt_templates prompt_templates::defaults() {
  return {std::string{embedded::kSpatialTemplate}, std::string{embedded::kInformationTemplate}};
}

prompt_templates prompt_templates::load_dir(std::string const& dir) {
  return {read_file(dir + "/spatial_v1.txt"), read_file(dir + "/information_v1.txt")};
}

std::string assemble_prompt(route_payload const& payload, std::string_view utterance,
                            prompt_templates const& templates) {
  auto body = to_json(payload).dump(2);
  return fill(templates.spatial, {}, body, utterance);
}

std::string assemble_prompt(std::vector<retrieved_passage> const& passages,
                            std::string_view utterance, prompt_templates const& templates) {
  if (passages.empty()) {
    return fill(templates.information, kNoContextNotice, "(no passages retrieved)", utterance);
  }
  std::string body;
  for (auto i = std::size_t{0}; i < passages.size(); ++i) {
    auto text = passages[i].text;
    replace_all(text, "\n", " ");
    replace_all(text, "```", "'''");
    if (i > 0) {
      body += '\n';
    }
    body += "[" + std::to_string(i + 1) + "] id=" + passages[i].id + "\n" + text;
  }
  return fill(templates.information, {}, body, utterance);
}

std::optional<fenced_block> find_fenced_block(std::string_view prompt) {
  auto const open = prompt.find("```");
  if (open == std::string_view::npos) {
    return std::nullopt;
  }
  auto const tag_end = prompt.find('\n', open);
  if (tag_end == std::string_view::npos) {
    return std::nullopt;
  }
  auto const close = prompt.find("\n```", tag_end);
  if (close == std::string_view::npos) {
    return std::nullopt;
  }
  fenced_block block;
  block.tag = std::string{prompt.substr(open + 3, tag_end - open - 3)};
  block.body = std::string{prompt.substr(tag_end + 1, close - tag_end - 1)};
  return block;
}

}  // namespace walkrag::quag
