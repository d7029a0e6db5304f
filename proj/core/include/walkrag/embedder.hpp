#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace walkrag::retrieval {

struct embedding_vector {
  std::vector<float> values;

  std::size_t dimension() const { return values.size(); }
};

// Text encoder contract. `encode` may return an unnormalised vector; callers
// go through `embed`, which normalises. Failures throw encoder_failure.
class embedder {
public:
  virtual ~embedder() = default;
  virtual std::size_t dimension() const = 0;
  virtual std::vector<float> encode(std::string_view text) = 0;
};

// Deterministic offline encoder: lowercased alphanumeric tokens (minus a small
// English stop-word list) are hashed with 64-bit FNV-1a into `dimension`
// signed buckets.
class hashing_embedder : public embedder {
public:
  static constexpr std::size_t kDefaultDimension = 256;

  explicit hashing_embedder(std::size_t dimension = kDefaultDimension);

  std::size_t dimension() const override { return dimension_; }
  std::vector<float> encode(std::string_view text) override;

  static std::vector<std::string> tokenize(std::string_view text);

private:
  std::size_t dimension_;
};

// OpenAI-compatible `POST {base_url}/v1/embeddings` client.
class http_embedder : public embedder {
public:
  http_embedder(std::string base_url, std::string model, std::size_t dimension,
                int timeout_s = 30);

  std::size_t dimension() const override { return dimension_; }
  std::vector<float> encode(std::string_view text) override;

private:
  std::string base_url_;
  std::string model_;
  std::size_t dimension_;
  int timeout_s_;
};

// Raw encoder output, validated. Throws encoder_failure for empty text, a
// dimension mismatch or an all-zero / non-finite encoding.
embedding_vector encode_checked(std::string_view text, embedder& encoder);

// encode_checked followed by L2 normalisation.
embedding_vector embed(std::string_view text, embedder& encoder);

// Scales to unit norm in place; false for a zero vector.
bool normalize(std::vector<float>& values);

}  // namespace walkrag::retrieval
