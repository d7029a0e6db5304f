#include "walkrag/vector_index.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "walkrag/errors.hpp"

namespace walkrag::retrieval {

namespace {

constexpr std::array<char, 8> kMagic = {'W', 'R', 'A', 'G', 'V', 'I', 'D', 'X'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_le(std::ostream& out, T value) {
  static_assert(std::is_unsigned_v<T>);
  std::array<char, sizeof(T)> bytes{};
  for (auto i = std::size_t{0}; i < sizeof(T); ++i) {
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xff);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T read_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    throw index_format_error("truncated index file");
  }
  T value = 0;
  for (auto i = std::size_t{0}; i < sizeof(T); ++i) {
    value |= static_cast<T>(bytes[i]) << (8 * i);
  }
  return value;
}

bool better(double score_a, std::string const& id_a, double score_b, std::string const& id_b) {
  return score_a != score_b ? score_a > score_b : id_a < id_b;
}

}  // namespace

std::string_view to_string(index_mode mode) {
  return mode == index_mode::exact ? "exact" : "approx";
}

index_mode index_mode_from_string(std::string_view text) {
  if (text == "exact") return index_mode::exact;
  if (text == "approx" || text == "approximate") return index_mode::approximate;
  throw std::invalid_argument("unknown index mode '" + std::string{text} + "'");
}

vector_index vector_index::build(std::vector<std::string> ids,
                                 std::vector<embedding_vector> const& vectors, index_mode mode,
                                 ivf_params params) {
  if (ids.size() != vectors.size()) {
    throw std::invalid_argument("ids and vectors differ in length");
  }
  vector_index index;
  index.mode_ = mode;
  index.params_ = params;
  index.ids_ = std::move(ids);
  if (!vectors.empty()) {
    index.dimension_ = vectors.front().dimension();
  }
  index.data_.reserve(index.dimension_ * vectors.size());
  for (auto const& v : vectors) {
    if (v.dimension() != index.dimension_) {
      throw dimension_mismatch("vector of dimension " + std::to_string(v.dimension()) +
                               " in an index of dimension " + std::to_string(index.dimension_));
    }
    index.data_.insert(index.data_.end(), v.values.begin(), v.values.end());
  }
  index.compute_norms();
  if (std::find(index.norms_.begin(), index.norms_.end(), 0.0) != index.norms_.end()) {
    throw std::invalid_argument("cannot index a zero vector");
  }
  if (mode == index_mode::approximate) {
    index.train_clusters();
  }
  return index;
}

std::span<float const> vector_index::row(std::size_t i) const {
  return {data_.data() + i * dimension_, dimension_};
}

double vector_index::dot(std::span<float const> a, std::size_t r) const {
  auto const b = row(r);
  auto sum = 0.0;
  for (auto i = std::size_t{0}; i < dimension_; ++i) {
    sum += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return sum;
}

double vector_index::cosine(std::span<float const> q, double q_norm, std::size_t r) const {
  return dot(q, r) / (q_norm * norms_[r]);
}

void vector_index::compute_norms() {
  norms_.assign(ids_.size(), 0.0);
  for (auto r = std::size_t{0}; r < ids_.size(); ++r) {
    auto sum = 0.0;
    for (auto const x : row(r)) {
      sum += static_cast<double>(x) * static_cast<double>(x);
    }
    norms_[r] = std::sqrt(sum);
  }
}

void vector_index::train_clusters() {
  centroids_.clear();
  lists_.clear();
  auto const n = ids_.size();
  if (n == 0) {
    return;
  }
  if (params_.nlist == 0) {
    params_.nlist = static_cast<std::uint32_t>(
        std::max<double>(1.0, std::round(std::sqrt(static_cast<double>(n)))));
  }
  auto const nlist = std::min<std::size_t>(params_.nlist, n);

  // Seeds: partial Fisher-Yates driven by raw mt19937_64 output, which is
  // specified bit-for-bit by the standard (unlike the distributions).
  std::mt19937_64 rng{params_.seed};
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  for (auto i = std::size_t{0}; i < nlist; ++i) {
    auto const j = i + static_cast<std::size_t>(rng() % (n - i));
    std::swap(order[i], order[j]);
    auto const r = row(order[i]);
    centroids_.emplace_back(r.begin(), r.end());
  }

  std::vector<std::uint32_t> assignment(n, 0);
  auto assign = [&] {
    for (auto r = std::size_t{0}; r < n; ++r) {
      auto best = -std::numeric_limits<double>::infinity();
      for (auto c = std::size_t{0}; c < centroids_.size(); ++c) {
        auto const s = dot(centroids_[c], r);
        if (s > best) {
          best = s;
          assignment[r] = static_cast<std::uint32_t>(c);
        }
      }
    }
  };

  for (auto iter = std::uint32_t{0}; iter < params_.iterations; ++iter) {
    assign();
    std::vector<std::vector<double>> sums(centroids_.size(), std::vector<double>(dimension_, 0.0));
    std::vector<std::size_t> counts(centroids_.size(), 0);
    for (auto r = std::size_t{0}; r < n; ++r) {
      auto const v = row(r);
      auto& s = sums[assignment[r]];
      for (auto d = std::size_t{0}; d < dimension_; ++d) {
        s[d] += v[d] / norms_[r];
      }
      ++counts[assignment[r]];
    }
    for (auto c = std::size_t{0}; c < centroids_.size(); ++c) {
      if (counts[c] == 0) {
        continue;  // keep the previous centroid
      }
      std::vector<float> next(dimension_);
      for (auto d = std::size_t{0}; d < dimension_; ++d) {
        next[d] = static_cast<float>(sums[c][d]);
      }
      if (normalize(next)) {
        centroids_[c] = std::move(next);
      }
    }
  }
  assign();
  lists_.assign(centroids_.size(), {});
  for (auto r = std::size_t{0}; r < n; ++r) {
    lists_[assignment[r]].push_back(static_cast<std::uint32_t>(r));
  }
  if (params_.nprobe == 0) {
    params_.nprobe = calibrate_nprobe(assignment, rng);
  }
}

// Smallest nprobe whose recall@3 against exact search reaches
// kCalibrationRecall on probe queries built from the stored rows: a quarter
// are sums of two rows, the rest pick one non-zero coordinate from each of
// three to five rows (short keyword-style queries).
std::uint32_t vector_index::calibrate_nprobe(std::vector<std::uint32_t> const& assignment,
                                             std::mt19937_64& rng) const {
  constexpr std::size_t kQueries = 96;
  constexpr std::size_t kTop = 3;
  auto const n = ids_.size();
  auto const cells = centroids_.size();
  if (cells <= 1) {
    return 1;
  }

  std::vector<std::vector<float>> queries;
  for (auto q = std::size_t{0}; q < kQueries; ++q) {
    std::vector<float> v(dimension_, 0.0f);
    if (q % 4 == 0) {
      for (auto i = 0; i < 2; ++i) {
        auto const i_row = static_cast<std::size_t>(rng() % n);
        auto const r = row(i_row);
        for (auto d = std::size_t{0}; d < dimension_; ++d) {
          v[d] += static_cast<float>(r[d] / norms_[i_row]);
        }
      }
    } else {
      auto const picks = 3 + static_cast<int>(rng() % 3);
      for (auto i = 0; i < picks; ++i) {
        auto const r = row(static_cast<std::size_t>(rng() % n));
        std::vector<std::size_t> nonzero;
        for (auto d = std::size_t{0}; d < dimension_; ++d) {
          if (r[d] != 0.0f) {
            nonzero.push_back(d);
          }
        }
        if (!nonzero.empty()) {
          auto const d = nonzero[static_cast<std::size_t>(rng() % nonzero.size())];
          v[d] += r[d];
        }
      }
    }
    if (normalize(v)) {
      queries.push_back(std::move(v));
    }
  }

  // hits[p] = exact top-3 rows found when probing the p+1 nearest cells.
  std::vector<std::size_t> hits(cells, 0);
  std::size_t wanted = 0;
  for (auto const& q : queries) {
    std::vector<std::pair<double, std::uint32_t>> scored(n);
    for (auto r = std::uint32_t{0}; r < n; ++r) {
      scored[r] = {cosine(q, 1.0, r), r};
    }
    std::sort(scored.begin(), scored.end(), [&](auto const& a, auto const& b) {
      return better(a.first, ids_[a.second], b.first, ids_[b.second]);
    });
    std::vector<std::pair<double, std::size_t>> cell_scores;
    for (auto c = std::size_t{0}; c < cells; ++c) {
      auto s = 0.0;
      for (auto d = std::size_t{0}; d < dimension_; ++d) {
        s += static_cast<double>(q[d]) * centroids_[c][d];
      }
      cell_scores.emplace_back(s, c);
    }
    std::sort(cell_scores.begin(), cell_scores.end(), [](auto const& a, auto const& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    std::vector<std::size_t> cell_rank(cells);
    for (auto i = std::size_t{0}; i < cells; ++i) {
      cell_rank[cell_scores[i].second] = i;
    }

    auto const top = std::min(kTop, n);
    wanted += top;
    for (auto p = std::size_t{0}; p < cells; ++p) {
      std::size_t taken = 0;
      for (auto i = std::size_t{0}; i < n && taken < top; ++i) {
        if (cell_rank[assignment[scored[i].second]] <= p) {
          hits[p] += i < top ? 1 : 0;
          ++taken;
        }
      }
    }
  }
  for (auto p = std::size_t{0}; p < cells; ++p) {
    if (static_cast<double>(hits[p]) >= kCalibrationRecall * static_cast<double>(wanted)) {
      return static_cast<std::uint32_t>(p + 1);
    }
  }
  return static_cast<std::uint32_t>(cells);
}

std::vector<search_result> vector_index::search(std::span<float const> query, std::size_t k) const {
  if (ids_.empty() || k == 0) {
    return {};
  }
  if (query.size() != dimension_) {
    throw dimension_mismatch("query of dimension " + std::to_string(query.size()) +
                             " against an index of dimension " + std::to_string(dimension_));
  }
  auto q_norm = 0.0;
  for (auto const x : query) {
    q_norm += static_cast<double>(x) * static_cast<double>(x);
  }
  q_norm = std::sqrt(q_norm);
  if (!(q_norm > 0.0) || !std::isfinite(q_norm)) {
    return {};
  }
  auto const& q = query;

  std::vector<std::pair<double, std::uint32_t>> scored;
  auto score_row = [&](std::uint32_t r) { scored.emplace_back(cosine(q, q_norm, r), r); };
  if (mode_ == index_mode::exact || centroids_.empty()) {
    scored.reserve(ids_.size());
    for (auto r = std::uint32_t{0}; r < ids_.size(); ++r) {
      score_row(r);
    }
  } else {
    std::vector<std::pair<double, std::size_t>> cells;
    for (auto c = std::size_t{0}; c < centroids_.size(); ++c) {
      auto s = 0.0;
      for (auto d = std::size_t{0}; d < dimension_; ++d) {
        s += static_cast<double>(q[d]) * centroids_[c][d];
      }
      cells.emplace_back(s, c);
    }
    auto const probes = std::min<std::size_t>(std::max<std::uint32_t>(params_.nprobe, 1), cells.size());
    std::partial_sort(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(probes), cells.end(),
                      [](auto const& a, auto const& b) {
                        return a.first != b.first ? a.first > b.first : a.second < b.second;
                      });
    for (auto p = std::size_t{0}; p < probes; ++p) {
      for (auto const r : lists_[cells[p].second]) {
        score_row(r);
      }
    }
  }

  auto const take = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take), scored.end(),
                    [&](auto const& a, auto const& b) {
                      return better(a.first, ids_[a.second], b.first, ids_[b.second]);
                    });
  std::vector<search_result> out;
  out.reserve(take);
  for (auto i = std::size_t{0}; i < take; ++i) {
    out.push_back({ids_[scored[i].second], scored[i].first, i + 1});
  }
  return out;
}

void vector_index::save(std::ostream& out) const {
  out.write(kMagic.data(), kMagic.size());
  write_le<std::uint32_t>(out, kVersion);
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(dimension_));
  write_le<std::uint64_t>(out, ids_.size());
  write_le<std::uint8_t>(out, static_cast<std::uint8_t>(mode_));
  if (mode_ == index_mode::approximate) {
    write_le<std::uint32_t>(out, params_.nlist);
    write_le<std::uint32_t>(out, params_.nprobe);
    write_le<std::uint64_t>(out, params_.seed);
    write_le<std::uint32_t>(out, params_.iterations);
  }
  for (auto const& id : ids_) {
    write_le<std::uint32_t>(out, static_cast<std::uint32_t>(id.size()));
    out.write(id.data(), static_cast<std::streamsize>(id.size()));
  }
  for (auto const x : data_) {
    write_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(x));
  }
}

vector_index vector_index::load(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw index_format_error("not a walkrag vector index");
  }
  if (auto const version = read_le<std::uint32_t>(in); version != kVersion) {
    throw index_format_error("unsupported index version " + std::to_string(version));
  }
  vector_index index;
  index.dimension_ = read_le<std::uint32_t>(in);
  auto const count = read_le<std::uint64_t>(in);
  auto const mode = read_le<std::uint8_t>(in);
  if (mode > 1) {
    throw index_format_error("unknown index mode " + std::to_string(mode));
  }
  index.mode_ = static_cast<index_mode>(mode);
  if (index.mode_ == index_mode::approximate) {
    index.params_.nlist = read_le<std::uint32_t>(in);
    index.params_.nprobe = read_le<std::uint32_t>(in);
    index.params_.seed = read_le<std::uint64_t>(in);
    index.params_.iterations = read_le<std::uint32_t>(in);
  }
  index.ids_.reserve(count);
  for (auto i = std::uint64_t{0}; i < count; ++i) {
    auto const len = read_le<std::uint32_t>(in);
    std::string id(len, '\0');
    if (!in.read(id.data(), len)) {
      throw index_format_error("truncated id table");
    }
    index.ids_.push_back(std::move(id));
  }
  index.data_.resize(count * index.dimension_);
  for (auto& x : index.data_) {
    x = std::bit_cast<float>(read_le<std::uint32_t>(in));
  }
  index.compute_norms();
  if (index.mode_ == index_mode::approximate) {
    index.train_clusters();
  }
  return index;
}

void vector_index::save_file(std::string const& path) const {
  std::ofstream out{path, std::ios::binary | std::ios::trunc};
  if (!out) {
    throw std::runtime_error("cannot write index " + path);
  }
  save(out);
}

vector_index vector_index::load_file(std::string const& path) {
  std::ifstream in{path, std::ios::binary};
  if (!in) {
    throw index_format_error("cannot open index " + path);
  }
  return load(in);
}

std::vector<search_result> search(std::string_view query_text, std::size_t k,
                                  vector_index const& index, embedder& encoder) {
  if (index.empty()) {
    return {};
  }
  auto const q = encode_checked(query_text, encoder);
  return index.search(q.values, k);
}

vector_index build_corpus_index(passage_store const& store, embedder& encoder, index_mode mode,
                                ivf_params params) {
  std::vector<std::string> ids;
  std::vector<embedding_vector> vectors;
  ids.reserve(store.size());
  vectors.reserve(store.size());
  for (auto const& p : store.passages()) {
    try {
      vectors.push_back(encode_checked(p.text, encoder));
    } catch (encoder_failure const& e) {
      throw encoder_failure("passage " + p.id + ": " + e.what());
    }
    ids.push_back(p.id);
  }
  return vector_index::build(std::move(ids), vectors, mode, params);
}

}  // namespace walkrag::retrieval
