#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gsnforge/errors.hpp"
#include "gsnforge/prompt_engine.hpp"

namespace gsnforge {

struct ModelSpec {
  std::string model_name;
  double temperature = 1.0;
  int max_tokens = 4096;
  std::string endpoint;  ///< base URL; empty means GSNFORGE_API_BASE or the default
  double timeout_seconds = 120.0;

  /// Throws InvalidModelSpec.
  void validate() const;
  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

struct Usage {
  long prompt_tokens = 0;
  long completion_tokens = 0;
  long total_tokens = 0;
  friend bool operator==(const Usage&, const Usage&) = default;
};

struct GenerationRecord {
  int run_index = 0;  ///< 1-based
  std::string model;
  std::string raw_text;
  std::string request_digest;
  std::string started_at;
  std::string finished_at;
  std::optional<Usage> usage;
  std::optional<std::string> error;
  int attempts = 0;

  bool ok() const { return !error.has_value(); }
  friend bool operator==(const GenerationRecord&, const GenerationRecord&) = default;
};

/// One JSON object per line.
std::string record_to_json(const GenerationRecord& record);
GenerationRecord record_from_json(std::string_view line);

struct ChatRequest {
  std::string_view system;
  std::string_view user;
  const ModelSpec* spec = nullptr;
  int run_index = 0;
};

struct ChatResponse {
  std::string text;
  std::optional<Usage> usage;
};

class BackendError : public Error {
 public:
  BackendError(ErrorCode code, const std::string& message, bool retryable, int status = 0)
      : Error(code, message), retryable_(retryable), status_(status) {}
  bool retryable() const noexcept { return retryable_; }
  int status() const noexcept { return status_; }

 private:
  bool retryable_;
  int status_;
};

class Backend {
 public:
  virtual ~Backend() = default;
  /// Throws BackendError on failure.
  virtual ChatResponse complete(const ChatRequest& request) = 0;
  virtual std::string name() const = 0;
};

/// Offline backend driven by a callback.
class MockBackend : public Backend {
 public:
  using Responder = std::function<std::string(const ChatRequest&)>;
  explicit MockBackend(Responder responder) : responder_(std::move(responder)) {}
  ChatResponse complete(const ChatRequest& request) override;
  std::string name() const override { return "mock"; }

 private:
  Responder responder_;
};

/// OpenAI-compatible chat-completions over HTTP(S).
class HttpBackend : public Backend {
 public:
  static constexpr std::string_view kDefaultBase = "https://api.openai.com/v1";

  HttpBackend(std::string api_key, std::string default_base);
  /// Reads GSNFORGE_API_KEY (AuthMissing when unset) and GSNFORGE_API_BASE.
  static std::unique_ptr<HttpBackend> from_env();

  ChatResponse complete(const ChatRequest& request) override;
  std::string name() const override { return "http"; }

 private:
  std::string api_key_;
  std::string default_base_;
};

struct GatewayOptions {
  int retries = 3;
  std::chrono::milliseconds backoff_base{500};
  int parallelism = 2;
};

/// SHA-256 hex over the prompts and every ModelSpec field.
std::string request_digest(const PromptBundle& bundle, const ModelSpec& spec);

/// Exactly `k` records ordered by run_index. Failed runs carry the error and
/// an empty raw_text; they never throw.
std::vector<GenerationRecord> generate(Backend& backend, const PromptBundle& bundle,
                                       const ModelSpec& spec, int k,
                                       const GatewayOptions& options = {});

std::string utc_timestamp();

}  // namespace gsnforge
