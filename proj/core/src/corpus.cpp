#include "walkrag/corpus.hpp"

#include <fstream>
#include <istream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "walkrag/errors.hpp"

namespace walkrag::retrieval {

void passage_store::add(passage p) {
  if (p.text.empty()) {
    throw std::invalid_argument("passage '" + p.id + "' has empty text");
  }
  if (by_id_.contains(p.id)) {
    throw duplicate_id(p.id);
  }
  by_id_.emplace(p.id, passages_.size());
  passages_.push_back(std::move(p));
}

passage const* passage_store::find(std::string const& id) const {
  auto const it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &passages_[it->second];
}

std::size_t ingest_corpus(std::istream& in, passage_store& store) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t added = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (nlohmann::json::parse_error const& e) {
      throw malformed_line(line_no, e.what());
    }
    if (!doc.is_object() || !doc.contains("id") || !doc["id"].is_string() ||
        !doc.contains("text") || !doc["text"].is_string()) {
      throw malformed_line(line_no, "expected an object with string 'id' and 'text'");
    }
    passage p;
    p.id = doc["id"].get<std::string>();
    p.text = doc["text"].get<std::string>();
    if (p.id.empty() || p.text.empty()) {
      throw malformed_line(line_no, "'id' and 'text' must be non-empty");
    }
    if (auto const it = doc.find("source"); it != doc.end() && it->is_string()) {
      p.source = it->get<std::string>();
    }
    store.add(std::move(p));
    ++added;
  }
  return added;
}

passage_store load_corpus_file(std::string const& path) {
  std::ifstream in{path};
  if (!in) {
    throw std::runtime_error("cannot open corpus " + path);
  }
  passage_store store;
  ingest_corpus(in, store);
  return store;
}

}  // namespace walkrag::retrieval
