#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "synthetic_corpus.hpp"
#include "test_support.hpp"
#include "walkrag/corpus.hpp"
#include "walkrag/embedder.hpp"
#include "walkrag/errors.hpp"
#include "walkrag/vector_index.hpp"

using namespace walkrag;
using namespace walkrag::retrieval;

namespace {

double cosine(std::string const& a, std::string const& b) {
  hashing_embedder enc;
  auto const va = embed(a, enc);
  auto const vb = embed(b, enc);
  double dot = 0.0;
  for (std::size_t i = 0; i < va.dimension(); ++i) {
    dot += double{va.values[i]} * double{vb.values[i]};
  }
  return dot;
}

// Encoder that always fails or returns the wrong size.
struct broken_embedder : embedder {
  broken_embedder(std::size_t d, bool wrong) : dim(d), wrong_size(wrong) {}
  std::size_t dim;
  bool wrong_size;
  std::size_t dimension() const override { return dim; }
  std::vector<float> encode(std::string_view text) override {
    if (text.find("boom") != std::string_view::npos) {
      throw encoder_failure("backend down");
    }
    return std::vector<float>(wrong_size ? dim + 1 : dim, 1.0f);
  }
};

struct indexed_corpus {
  testing::synthetic_corpus corpus;
  std::vector<std::vector<float>> rows;
  vector_index exact;
};

indexed_corpus index_synthetic(std::size_t n) {
  indexed_corpus out;
  out.corpus = testing::make_synthetic_corpus(n, 7);
  hashing_embedder enc;
  std::vector<embedding_vector> vecs;
  for (auto const& t : out.corpus.texts) {
    vecs.push_back(encode_checked(t, enc));
    out.rows.push_back(vecs.back().values);
  }
  out.exact = vector_index::build(out.corpus.ids, vecs);
  return out;
}

}  // namespace

TEST_CASE("corpus ingest reads jsonl and skips blank lines") {
  std::istringstream in{R"({"id":"a","text":"first","source":"x"}

{"id":"b","text":"second"}
)"};
  passage_store store;
  CHECK(ingest_corpus(in, store) == 2);
  REQUIRE(store.find("a"));
  CHECK(store.find("a")->source == "x");
  CHECK_FALSE(store.find("b")->source);
  CHECK(store.passages()[1].id == "b");
}

TEST_CASE("corpus ingest reports the failing line") {
  std::istringstream in{"{\"id\":\"a\",\"text\":\"ok\"}\n{\"id\":\"b\",\n"};
  passage_store store;
  try {
    ingest_corpus(in, store);
    FAIL("expected malformed_line");
  } catch (malformed_line const& e) {
    CHECK(e.line_no() == 2);
  }

  std::istringstream missing_text{"{\"id\":\"a\"}\n"};
  passage_store other;
  CHECK_THROWS_AS(ingest_corpus(missing_text, other), malformed_line);
}

TEST_CASE("corpus ingest rejects duplicate ids") {
  std::istringstream in{"{\"id\":\"a\",\"text\":\"one\"}\n{\"id\":\"a\",\"text\":\"two\"}\n"};
  passage_store store;
  try {
    ingest_corpus(in, store);
    FAIL("expected duplicate_id");
  } catch (duplicate_id const& e) {
    CHECK(e.id() == "a");
  }
}

TEST_CASE("fixture corpus has 100 passages") {
  auto const store = load_corpus_file(testing::fixture("corpus.jsonl"));
  CHECK(store.size() == 100);
}

TEST_CASE("tokenizer lowercases, splits and drops stop words") {
  auto const t = hashing_embedder::tokenize("Tell me more about the Champs-de-Mars!");
  CHECK(t == std::vector<std::string>{"champs", "de", "mars"});
}

TEST_CASE("hashing embedder is deterministic and unit length") {
  hashing_embedder a;
  hashing_embedder b;
  auto const va = embed("Eiffel Tower history", a);
  auto const vb = embed("Eiffel Tower history", b);
  CHECK(va.values == vb.values);
  CHECK(va.dimension() == 256);
  double norm = 0.0;
  for (auto x : va.values) {
    norm += double{x} * x;
  }
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("hashing embedder cosine goldens") {
  // Values from an independent implementation of the same hashing scheme.
  CHECK(cosine("Tell me more about the Champs de Mars",
               "The Champ de Mars is a large public green space near the Eiffel Tower") ==
        doctest::Approx(0.3651483716701108).epsilon(1e-6));
  CHECK(cosine("Eiffel Tower history", "Louvre museum paintings") == doctest::Approx(0.0));
  CHECK(cosine("walkable route", "walkable route") == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("embed rejects empty text and bad encoders") {
  hashing_embedder enc;
  CHECK_THROWS_AS(embed("", enc), encoder_failure);
  CHECK_THROWS_AS(embed("the of and", enc), encoder_failure);
  broken_embedder bad{8, true};
  CHECK_THROWS_AS(embed("anything", bad), encoder_failure);
}

TEST_CASE("build_corpus_index names the passage that failed to encode") {
  passage_store store;
  store.add({"ok", "fine text", {}});
  store.add({"p-bad", "boom", {}});
  broken_embedder enc{4, false};
  try {
    build_corpus_index(store, enc);
    FAIL("expected encoder_failure");
  } catch (encoder_failure const& e) {
    CHECK(std::string{e.what()}.find("p-bad") != std::string::npos);
  }
}

TEST_CASE("exact search equals the brute-force ranking") {
  auto const ix = index_synthetic(400);
  hashing_embedder enc;
  auto const queries = testing::make_synthetic_queries(50, 11);
  for (auto const& q : queries) {
    auto const qv = encode_checked(q, enc).values;
    auto const oracle = testing::brute_force_rank(qv, ix.rows, ix.corpus.ids);
    auto const got = ix.exact.search(qv, 10);
    REQUIRE(got.size() == 10);
    CHECK(testing::matches_oracle(got, oracle));
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].passage_id == oracle[i].id);
    }
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].rank == i + 1);
    }
  }
}

TEST_CASE("mathematically equal cosines tie exactly") {
  // Same dot product and norm reached through different coordinates.
  std::vector<embedding_vector> vecs{{{0.0f, 3.0f, 1.0f, 0.0f}}, {{1.0f, 0.0f, 0.0f, 3.0f}},
                                     {{3.0f, 0.0f, 0.0f, 1.0f}}};
  auto const index = vector_index::build({"z", "y", "x"}, vecs);
  auto const r = index.search(std::vector<float>{1.0f, 1.0f, 0.0f, 0.0f}, 3);
  REQUIRE(r.size() == 3);
  CHECK(r[0].passage_id == "x");
  CHECK(r[1].passage_id == "z");
  CHECK(r[0].score == doctest::Approx(3.0 / std::sqrt(20.0)));
  CHECK(r[0].score == r[1].score);
  CHECK(r[2].passage_id == "y");
}

TEST_CASE("ties are broken by passage id") {
  std::vector<embedding_vector> vecs(3, embedding_vector{{1.0f, 0.0f}});
  auto const index = vector_index::build({"c", "a", "b"}, vecs);
  auto const r = index.search(std::vector<float>{1.0f, 0.0f}, 3);
  REQUIRE(r.size() == 3);
  CHECK(r[0].passage_id == "a");
  CHECK(r[1].passage_id == "b");
  CHECK(r[2].passage_id == "c");
}

TEST_CASE("every passage retrieves itself first") {
  auto const ix = index_synthetic(300);
  hashing_embedder enc;
  for (std::size_t i = 0; i < ix.corpus.ids.size(); ++i) {
    auto const r = search(ix.corpus.texts[i], 1, ix.exact, enc);
    REQUIRE(r.size() == 1);
    CHECK(r[0].passage_id == ix.corpus.ids[i]);
  }
}

TEST_CASE("approximate recall at 3 is at least 0.95") {
  auto const corpus = testing::make_synthetic_corpus(1000, 7);
  passage_store store;
  for (std::size_t i = 0; i < corpus.ids.size(); ++i) {
    store.add({corpus.ids[i], corpus.texts[i], {}});
  }
  hashing_embedder enc;
  auto const exact = build_corpus_index(store, enc);
  auto const approx = build_corpus_index(store, enc, index_mode::approximate);
  CHECK(approx.mode() == index_mode::approximate);
  double hits = 0.0;
  auto const queries = testing::make_synthetic_queries(50, 23);
  for (auto const& q : queries) {
    auto const want = search(q, 3, exact, enc);
    auto const got = search(q, 3, approx, enc);
    std::set<std::string> truth;
    for (auto const& r : want) {
      truth.insert(r.passage_id);
    }
    for (auto const& r : got) {
      hits += truth.contains(r.passage_id) ? 1.0 : 0.0;
    }
  }
  CHECK(hits / (3.0 * queries.size()) >= 0.95);
}

TEST_CASE("search edge cases") {
  hashing_embedder enc;
  vector_index empty;
  CHECK(search("anything", 3, empty, enc).empty());

  std::vector<embedding_vector> vecs{{{1.0f, 0.0f}}, {{0.0f, 1.0f}}};
  auto const index = vector_index::build({"x", "y"}, vecs);
  CHECK(index.search(std::vector<float>{1.0f, 1.0f}, 10).size() == 2);
  CHECK(index.search(std::vector<float>{1.0f, 1.0f}, 0).empty());
  CHECK_THROWS_AS(index.search(std::vector<float>{1.0f, 0.0f, 0.0f}, 1), dimension_mismatch);

  std::vector<embedding_vector> mixed{{{1.0f, 0.0f}}, {{0.0f, 1.0f, 0.0f}}};
  CHECK_THROWS_AS(vector_index::build({"x", "y"}, mixed), dimension_mismatch);
}

TEST_CASE("index save and load are byte stable") {
  auto const corpus = testing::make_synthetic_corpus(200, 3);
  passage_store store;
  for (std::size_t i = 0; i < corpus.ids.size(); ++i) {
    store.add({corpus.ids[i], corpus.texts[i], {}});
  }
  hashing_embedder enc;
  for (auto const mode : {index_mode::exact, index_mode::approximate}) {
    auto const index = build_corpus_index(store, enc, mode);
    std::ostringstream first;
    index.save(first);
    std::istringstream in{first.str()};
    auto const loaded = vector_index::load(in);
    std::ostringstream second;
    loaded.save(second);
    CHECK(first.str() == second.str());
    CHECK(loaded.ids() == index.ids());
    CHECK(loaded.mode() == mode);
    auto const a = search("kaloren mitos", 5, index, enc);
    auto const b = search("kaloren mitos", 5, loaded, enc);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].passage_id == b[i].passage_id);
      CHECK(a[i].score == b[i].score);
    }
  }
}

TEST_CASE("index load rejects bad input") {
  std::istringstream bad_magic{"NOTANIDX\x01\x00\x00\x00"};
  CHECK_THROWS_AS(vector_index::load(bad_magic), index_format_error);

  std::vector<embedding_vector> vecs{{{1.0f, 0.0f}}};
  auto const index = vector_index::build({"x"}, vecs);
  std::ostringstream out;
  index.save(out);
  auto const bytes = out.str();
  std::istringstream truncated{bytes.substr(0, bytes.size() - 3)};
  CHECK_THROWS_AS(vector_index::load(truncated), index_format_error);
}

TEST_CASE("fixture corpus answers the Champ de Mars follow-up") {
  auto const store = load_corpus_file(testing::fixture("corpus.jsonl"));
  hashing_embedder enc;
  auto const index = build_corpus_index(store, enc);
  auto const r = search("Tell me more about the Champs de Mars", 3, index, enc);
  REQUIRE(r.size() == 3);
  bool found = false;
  for (auto const& x : r) {
    found = found || x.passage_id == "p-champ-de-mars";
  }
  CHECK(found);
}
