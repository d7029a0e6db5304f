#include "walkrag/embedder.hpp"

#include <algorithm>

#include <cmath>
#include <cstdint>
#include <set>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "walkrag/errors.hpp"

namespace walkrag::retrieval {

namespace {

std::set<std::string, std::less<>> const kStopWords = {
    "a",    "an",   "and",  "are",   "as",    "at",   "be",   "by",    "can",  "do",
    "does", "for",  "from", "has",   "have",  "how",  "i",    "in",    "is",   "it",
    "its",  "me",   "more", "of",    "on",    "or",   "tell", "that",  "the",  "there",
    "this", "to",   "was",  "what",  "when",  "where", "which", "who",  "why",  "with",
    "you",  "about", "some", "any",  "my",    "we",   "our",  "your",  "were", "did"};

std::uint64_t fnv1a(std::string_view s) {
  auto h = std::uint64_t{14695981039346656037ull};
  for (auto const c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

bool is_token_char(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

}  // namespace

hashing_embedder::hashing_embedder(std::size_t dimension) : dimension_(dimension) {
  if (dimension_ == 0) {
    throw std::invalid_argument("embedding dimension must be positive");
  }
}

std::vector<std::string> hashing_embedder::tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty() && !kStopWords.contains(current)) {
      tokens.push_back(current);
    }
    current.clear();
  };
  for (auto const ch : text) {
    auto const c = static_cast<unsigned char>(ch);
    if (is_token_char(c)) {
      current += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : ch;
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::vector<float> hashing_embedder::encode(std::string_view text) {
  std::vector<float> v(dimension_, 0.0f);
  for (auto const& token : tokenize(text)) {
    auto const h = fnv1a(token);
    auto const bucket = static_cast<std::size_t>(h % dimension_);
    v[bucket] += (h >> 63) != 0 ? -1.0f : 1.0f;
  }
  return v;
}

http_embedder::http_embedder(std::string base_url, std::string model, std::size_t dimension,
                             int timeout_s)
    : base_url_(std::move(base_url)), model_(std::move(model)), dimension_(dimension),
      timeout_s_(timeout_s) {}

std::vector<float> http_embedder::encode(std::string_view text) {
  httplib::Client client{base_url_};
  client.set_connection_timeout(timeout_s_);
  client.set_read_timeout(timeout_s_);
  auto const body = nlohmann::json{{"model", model_}, {"input", std::string{text}}}.dump();
  auto const res = client.Post("/v1/embeddings", body, "application/json");
  if (!res) {
    throw encoder_failure("embedding request failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw encoder_failure("embedding service returned HTTP " + std::to_string(res->status));
  }
  try {
    auto const doc = nlohmann::json::parse(res->body);
    return doc.at("data").at(0).at("embedding").get<std::vector<float>>();
  } catch (nlohmann::json::exception const& e) {
    throw encoder_failure(std::string{"embedding response: "} + e.what());
  }
}

bool normalize(std::vector<float>& values) {
  auto sum = 0.0;
  for (auto const x : values) {
    sum += static_cast<double>(x) * x;
  }
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    return false;
  }
  auto const inv = 1.0 / std::sqrt(sum);
  for (auto& x : values) {
    x = static_cast<float>(x * inv);
  }
  return true;
}

embedding_vector encode_checked(std::string_view text, embedder& encoder) {
  if (text.empty()) {
    throw encoder_failure("cannot embed empty text");
  }
  auto values = encoder.encode(text);
  if (values.size() != encoder.dimension()) {
    throw encoder_failure("encoder returned " + std::to_string(values.size()) +
                          " dimensions, expected " + std::to_string(encoder.dimension()));
  }
  auto const zero = std::all_of(values.begin(), values.end(), [](float x) { return x == 0.0f; });
  if (zero || !std::all_of(values.begin(), values.end(), [](float x) { return std::isfinite(x); })) {
    throw encoder_failure("text has no encodable content");
  }
  return {std::move(values)};
}

embedding_vector embed(std::string_view text, embedder& encoder) {
  auto v = encode_checked(text, encoder);
  if (!normalize(v.values)) {
    throw encoder_failure("text has no encodable content");
  }
  return v;
}

}  // namespace walkrag::retrieval
