#include "gsnforge/llm_gateway.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <json.hpp>
#include <sstream>
#include <thread>

namespace gsnforge {

using nlohmann::json;

void ModelSpec::validate() const {
  if (model_name.empty()) throw Error(ErrorCode::kInvalidModelSpec, "model_name is empty");
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
    throw Error(ErrorCode::kInvalidModelSpec, "temperature must be >= 0");
  }
  if (max_tokens < 1) throw Error(ErrorCode::kInvalidModelSpec, "max_tokens must be >= 1");
  if (!(timeout_seconds > 0.0)) throw Error(ErrorCode::kInvalidModelSpec, "timeout must be > 0");
}

std::string record_to_json(const GenerationRecord& r) {
  json j = {{"run_index", r.run_index},
            {"model", r.model},
            {"raw_text", r.raw_text},
            {"request_digest", r.request_digest},
            {"started_at", r.started_at},
            {"finished_at", r.finished_at},
            {"attempts", r.attempts}};
  j["usage"] = r.usage ? json{{"prompt_tokens", r.usage->prompt_tokens},
                              {"completion_tokens", r.usage->completion_tokens},
                              {"total_tokens", r.usage->total_tokens}}
                       : json(nullptr);
  j["error"] = r.error ? json(*r.error) : json(nullptr);
  return j.dump();
}

GenerationRecord record_from_json(std::string_view line) {
  try {
    json j = json::parse(line);
    GenerationRecord r;
    r.run_index = j.at("run_index").get<int>();
    r.model = j.value("model", "");
    r.raw_text = j.at("raw_text").get<std::string>();
    r.request_digest = j.at("request_digest").get<std::string>();
    r.started_at = j.value("started_at", "");
    r.finished_at = j.value("finished_at", "");
    r.attempts = j.value("attempts", 0);
    if (j.contains("usage") && j["usage"].is_object()) {
      const json& u = j["usage"];
      r.usage = Usage{u.value("prompt_tokens", 0L), u.value("completion_tokens", 0L),
                      u.value("total_tokens", 0L)};
    }
    if (j.contains("error") && j["error"].is_string()) r.error = j["error"].get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, std::string("bad transcript record: ") + e.what());
  }
}

ChatResponse MockBackend::complete(const ChatRequest& request) {
  return {responder_(request), std::nullopt};
}

std::string request_digest(const PromptBundle& bundle, const ModelSpec& spec) {
  json j = {{"system", bundle.system},
            {"user", bundle.user},
            {"model_name", spec.model_name},
            {"temperature", spec.temperature},
            {"max_tokens", spec.max_tokens},
            {"endpoint", spec.endpoint},
            {"timeout_seconds", spec.timeout_seconds}};
  const std::string payload = j.dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(payload.data(), payload.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return hex.str();
}

std::string utc_timestamp() {
  auto now = std::chrono::system_clock::now();
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()) % 1000;
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%S") << '.' << std::setw(3) << std::setfill('0')
      << ms.count() << 'Z';
  return out.str();
}

namespace {

GenerationRecord run_once(Backend& backend, const PromptBundle& bundle, const ModelSpec& spec,
                          int run_index, const std::string& digest,
                          const GatewayOptions& options) {
  GenerationRecord rec;
  rec.run_index = run_index;
  rec.model = spec.model_name;
  rec.request_digest = digest;
  rec.started_at = utc_timestamp();
  ChatRequest req{bundle.system, bundle.user, &spec, run_index};
  const int attempts = 1 + std::max(0, options.retries);
  for (int a = 1; a <= attempts; ++a) {
    rec.attempts = a;
    try {
      ChatResponse resp = backend.complete(req);
      rec.raw_text = std::move(resp.text);
      rec.usage = resp.usage;
      rec.error.reset();
      break;
    } catch (const BackendError& e) {
      rec.error = e.what();
      if (!e.retryable()) break;
      if (a == attempts) {
        rec.error = std::string(to_string(ErrorCode::kEndpointUnreachable)) + ": " + e.what() +
                    " (after " + std::to_string(options.retries) + " retries)";
        break;
      }
      std::this_thread::sleep_for(options.backoff_base * (1 << (a - 1)));
    } catch (const std::exception& e) {
      rec.error = e.what();
      break;
    }
  }
  if (rec.error) rec.raw_text.clear();
  rec.finished_at = utc_timestamp();
  return rec;
}

}  // namespace

std::vector<GenerationRecord> generate(Backend& backend, const PromptBundle& bundle,
                                       const ModelSpec& spec, int k,
                                       const GatewayOptions& options) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  spec.validate();
  const std::string digest = request_digest(bundle, spec);
  std::vector<GenerationRecord> records(static_cast<std::size_t>(k));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < k; i = next++) {
      records[static_cast<std::size_t>(i)] = run_once(backend, bundle, spec, i + 1, digest, options);
    }
  };
  const int threads = std::clamp(options.parallelism, 1, k);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return records;
}

}  // namespace gsnforge
