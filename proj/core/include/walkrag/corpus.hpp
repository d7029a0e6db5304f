#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace walkrag::retrieval {

struct passage {
  std::string id;
  std::string text;
  std::optional<std::string> source;
};

// Passages in ingestion order with unique ids.
class passage_store {
public:
  // Throws duplicate_id / std::invalid_argument (empty text).
  void add(passage p);

  passage const* find(std::string const& id) const;
  std::vector<passage> const& passages() const { return passages_; }
  std::size_t size() const { return passages_.size(); }
  bool empty() const { return passages_.empty(); }

private:
  std::vector<passage> passages_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

// JSONL, one {"id", "text", "source"?} object per line; blank lines are
// skipped. Throws malformed_line(line_no) and duplicate_id(id). Returns the
// number of passages added.
std::size_t ingest_corpus(std::istream& in, passage_store& store);
passage_store load_corpus_file(std::string const& path);

}  // namespace walkrag::retrieval
