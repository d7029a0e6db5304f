#pragma once

#include <string>
#include <string_view>

namespace walkrag::quag {

// Text generation contract; failures throw client_failure.
class llm_client {
public:
  virtual ~llm_client() = default;
  virtual std::string generate(std::string const& prompt) = 0;
};

// Deterministic stand-in for a hosted model. Reads the fenced context block of
// a schematic prompt and restates it: the full instruction list, score and
// POIs for a route payload, numbered passage snippets for retrieved passages,
// and a fixed refusal when the prompt carries the no-context notice. Output is
// a pure function of the prompt.
class mock_llm_client : public llm_client {
public:
  std::string generate(std::string const& prompt) override;
};

// OpenAI-compatible `POST {base_url}/v1/completions` client.
class http_llm_client : public llm_client {
public:
  http_llm_client(std::string base_url, std::string model, int timeout_s = 60,
                  int max_tokens = 768);
  std::string generate(std::string const& prompt) override;

private:
  std::string base_url_;
  std::string model_;
  int timeout_s_;
  int max_tokens_;
};

}  // namespace walkrag::quag
