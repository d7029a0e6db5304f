#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "walkrag/corpus.hpp"
#include "walkrag/embedder.hpp"

namespace walkrag::retrieval {

enum class index_mode : std::uint8_t { exact = 0, approximate = 1 };

std::string_view to_string(index_mode mode);
index_mode index_mode_from_string(std::string_view text);

// Inverted-file build parameters for approximate mode. They are persisted with
// the index so a reload reproduces the same clustering.
inline constexpr double kCalibrationRecall = 0.97;

struct ivf_params {
  std::uint32_t nlist = 0;  // 0 = round(sqrt(count))
  std::uint32_t nprobe = 0;  // 0 = calibrate to kCalibrationRecall at build time
  std::uint64_t seed = 42;
  std::uint32_t iterations = 10;
};

struct search_result {
  std::string passage_id;
  double score = 0.0;  // cosine similarity
  std::size_t rank = 0;  // 1-based
};

// Id-aligned store of embedding vectors, kept as given. Scores are cosines
// computed in double from the stored floats and per-row norms, so rows with
// equal integer-valued encodings tie exactly. Exact mode scans every row; approximate
// mode scores only rows in the `nprobe` clusters nearest to the query
// (spherical k-means). Ranking: score descending, then passage id ascending.
class vector_index {
public:
  vector_index() = default;

  // Throws dimension_mismatch when
  // they disagree on dimension, std::invalid_argument on size mismatch with
  // `ids` or a zero vector.
  static vector_index build(std::vector<std::string> ids, std::vector<embedding_vector> const& vectors,
                            index_mode mode = index_mode::exact, ivf_params params = {});

  std::vector<search_result> search(std::span<float const> query, std::size_t k) const;

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  std::size_t dimension() const { return dimension_; }
  index_mode mode() const { return mode_; }
  ivf_params const& params() const { return params_; }
  std::vector<std::string> const& ids() const { return ids_; }
  std::span<float const> row(std::size_t i) const;

  // Little-endian layout:
  //   "WRAGVIDX" | u32 version=1 | u32 dimension | u64 count | u8 mode
  //   [approximate: u32 nlist | u32 nprobe | u64 seed | u32 iterations]
  //   count x (u32 byte length | id bytes)
  //   count x dimension f32, row-major
  void save(std::ostream& out) const;
  static vector_index load(std::istream& in);
  void save_file(std::string const& path) const;
  static vector_index load_file(std::string const& path);

private:
  void train_clusters();
  std::uint32_t calibrate_nprobe(std::vector<std::uint32_t> const& assignment, std::mt19937_64& rng) const;
  double dot(std::span<float const> a, std::size_t row) const;
  double cosine(std::span<float const> q, double q_norm, std::size_t row) const;
  void compute_norms();

  std::vector<std::string> ids_;
  std::vector<float> data_;
  std::vector<double> norms_;
  std::size_t dimension_ = 0;
  index_mode mode_ = index_mode::exact;
  ivf_params params_;
  std::vector<std::vector<float>> centroids_;
  std::vector<std::vector<std::uint32_t>> lists_;
};

// Encodes the query and returns at most k results; an empty index yields an
// empty list.
std::vector<search_result> search(std::string_view query_text, std::size_t k,
                                  vector_index const& index, embedder& encoder);

// Encodes every passage in store order (raw, see encode_checked). Throws encoder_failure naming the
// offending passage id.
vector_index build_corpus_index(passage_store const& store, embedder& encoder,
                                index_mode mode = index_mode::exact, ivf_params params = {});

}  // namespace walkrag::retrieval
