#include <cstdlib>
#include <httplib.h>
#include <json.hpp>

#include "gsnforge/llm_gateway.hpp"

namespace gsnforge {

using nlohmann::json;

namespace {

struct BaseUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // without trailing slash
};

BaseUrl split_base(std::string url) {
  while (!url.empty() && url.back() == '/') url.pop_back();
  auto scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw BackendError(ErrorCode::kInvalidModelSpec, "endpoint '" + url + "' lacks a scheme", false);
  }
  auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, ""};
  return {url.substr(0, slash), url.substr(slash)};
}

}  // namespace

HttpBackend::HttpBackend(std::string api_key, std::string default_base)
    : api_key_(std::move(api_key)), default_base_(std::move(default_base)) {}

std::unique_ptr<HttpBackend> HttpBackend::from_env() {
  const char* key = std::getenv("GSNFORGE_API_KEY");
  if (key == nullptr || *key == '\0') {
    throw Error(ErrorCode::kAuthMissing, "GSNFORGE_API_KEY is not set");
  }
  const char* base = std::getenv("GSNFORGE_API_BASE");
  return std::make_unique<HttpBackend>(
      key, base != nullptr && *base != '\0' ? std::string(base) : std::string(kDefaultBase));
}

ChatResponse HttpBackend::complete(const ChatRequest& request) {
  const ModelSpec& spec = *request.spec;
  BaseUrl base = split_base(spec.endpoint.empty() ? default_base_ : spec.endpoint);

  httplib::Client cli(base.origin);
  auto secs = static_cast<time_t>(spec.timeout_seconds);
  auto usecs = static_cast<time_t>((spec.timeout_seconds - static_cast<double>(secs)) * 1e6);
  cli.set_connection_timeout(secs, usecs);
  cli.set_read_timeout(secs, usecs);
  cli.set_write_timeout(secs, usecs);

  json body = {{"model", spec.model_name},
               {"temperature", spec.temperature},
               {"max_tokens", spec.max_tokens},
               {"messages",
                json::array({{{"role", "system"}, {"content", request.system}},
                             {{"role", "user"}, {"content", request.user}}})}};
  httplib::Headers headers = {{"Authorization", "Bearer " + api_key_}};
  auto res = cli.Post(base.path + "/chat/completions", headers, body.dump(), "application/json");
  if (!res) {
    throw BackendError(ErrorCode::kEndpointUnreachable,
                       "transport error: " + httplib::to_string(res.error()), true);
  }
  if (res->status == 429 || res->status >= 500) {
    throw BackendError(ErrorCode::kEndpointUnreachable,
                       "HTTP " + std::to_string(res->status), true, res->status);
  }
  if (res->status == 401 || res->status == 403) {
    throw BackendError(ErrorCode::kAuthMissing, "HTTP " + std::to_string(res->status), false,
                       res->status);
  }
  if (res->status != 200) {
    throw BackendError(ErrorCode::kEndpointUnreachable,
                       "HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200),
                       false, res->status);
  }
  try {
    json j = json::parse(res->body);
    ChatResponse out;
    out.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
    if (j.contains("usage") && j["usage"].is_object()) {
      const json& u = j["usage"];
      out.usage = Usage{u.value("prompt_tokens", 0L), u.value("completion_tokens", 0L),
                        u.value("total_tokens", 0L)};
    }
    return out;
  } catch (const json::exception& e) {
    throw BackendError(ErrorCode::kEndpointUnreachable,
                       std::string("malformed completion: ") + e.what(), false, res->status);
  }
}

}  // namespace gsnforge
