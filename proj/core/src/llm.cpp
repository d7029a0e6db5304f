#include "walkrag/llm.hpp"

#include <cstdio>
#include <sstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "walkrag/errors.hpp"
#include "walkrag/prompt.hpp"

namespace walkrag::quag {

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string first_sentence(std::string const& text) {
  auto const end = text.find(". ");
  return end == std::string::npos ? text : text.substr(0, end + 1);
}

std::string restate_route(route_payload const& p) {
  std::ostringstream out;
  out << "Walkable route from " << p.origin << " to " << p.destination << ".\n";
  if (p.instructions.empty()) {
    out << "The origin and the destination are the same place, so no walking is needed.\n";
  } else {
    out << "Directions:\n";
    for (auto i = std::size_t{0}; i < p.instructions.size(); ++i) {
      out << (i + 1) << ". " << p.instructions[i].text << "\n";
    }
  }
  out << "Walkability score: " << fixed(p.ws, 2) << " (0 = unwalkable, 1 = fully walkable).\n";
  out << "Indicators:";
  for (auto const& ind : p.indicators) {
    out << " " << ind.kind << " " << fixed(ind.c, 2) << "/" << fixed(p.tau, 0) << " (weight "
        << fixed(ind.w, 2) << ")" << (&ind == &p.indicators.back() ? "." : ";");
  }
  out << "\n";
  auto any_poi = false;
  for (auto const& s : p.segments) {
    for (auto const& poi : s.pois) {
      if (!any_poi) {
        out << "Points of interest along the way:\n";
        any_poi = true;
      }
      out << "- " << poi.name << " (" << poi.category << "), near step " << (s.index + 1) << "\n";
    }
  }
  return out.str();
}

std::string restate_passages(std::string const& body) {
  std::ostringstream out;
  out << "According to the knowledge base:\n";
  std::istringstream in{body};
  std::string header;
  std::string text;
  while (std::getline(in, header) && std::getline(in, text)) {
    auto const close = header.find(']');
    auto const marker = close == std::string::npos ? header : header.substr(0, close + 1);
    out << marker << " " << first_sentence(text) << "\n";
  }
  return out.str();
}

}  // namespace

std::string mock_llm_client::generate(std::string const& prompt) {
  if (prompt.find(kNoContextNotice) != std::string::npos) {
    return "I could not find information about this in the knowledge base, so I cannot answer "
           "it reliably.\n";
  }
  auto const block = find_fenced_block(prompt);
  if (!block) {
    return "I can help with walking routes and with questions about places along them.\n";
  }
  if (block->tag == "json") {
    try {
      return restate_route(parse_payload(block->body));
    } catch (std::exception const&) {
      return "The route description could not be read.\n";
    }
  }
  return restate_passages(block->body);
}

http_llm_client::http_llm_client(std::string base_url, std::string model, int timeout_s,
                                 int max_tokens)
    : base_url_(std::move(base_url)), model_(std::move(model)), timeout_s_(timeout_s),
      max_tokens_(max_tokens) {}

std::string http_llm_client::generate(std::string const& prompt) {
  httplib::Client client{base_url_};
  client.set_connection_timeout(timeout_s_);
  client.set_read_timeout(timeout_s_);
  auto const body = nlohmann::json{{"model", model_},
                                   {"prompt", prompt},
                                   {"max_tokens", max_tokens_},
                                   {"temperature", 0}}
                        .dump();
  auto const res = client.Post("/v1/completions", body, "application/json");
  if (!res) {
    throw client_failure("LLM request failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw client_failure("LLM service returned HTTP " + std::to_string(res->status));
  }
  try {
    auto const doc = nlohmann::json::parse(res->body);
    return doc.at("choices").at(0).at("text").get<std::string>();
  } catch (nlohmann::json::exception const& e) {
    throw client_failure(std::string{"LLM response: "} + e.what());
  }
}

}  // namespace walkrag::quag
