#include "lumenloop/loop/http_provider.hpp"

#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace lumenloop::loop {
namespace {

using json = nlohmann::json;

// Splits "scheme://host[:port][/prefix]" into the origin and the path prefix.
std::pair<std::string, std::string> split_base_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("API base URL must start with http:// or https://: '" + url + "'");
  }
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw ConfigError("unsupported URL scheme '" + scheme + "'");
  }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (scheme == "https") {
    throw ConfigError("this build has no TLS support; use an http:// base URL");
  }
#endif
  const auto path_start = url.find('/', scheme_end + 3);
  std::string origin = path_start == std::string::npos ? url : url.substr(0, path_start);
  std::string prefix = path_start == std::string::npos ? std::string() : url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') {
    prefix.pop_back();
  }
  if (origin.size() == scheme_end + 3) {
    throw ConfigError("API base URL has no host: '" + url + "'");
  }
  return {origin, prefix};
}

bool retryable_status(int status) { return status == 429 || status >= 500; }

}  // namespace

HttpProviderConfig http_config_from_env() {
  HttpProviderConfig cfg;
  const char* key = std::getenv(kApiKeyEnv);
  if (key == nullptr || *key == '\0') {
    throw ConfigError(std::string(kApiKeyEnv) + " is not set");
  }
  cfg.api_key = key;
  if (const char* base = std::getenv(kApiBaseEnv); base != nullptr && *base != '\0') {
    cfg.base_url = base;
  }
  return cfg;
}

std::string build_request_body(const ProviderRequest& request) {
  json messages = json::array();
  for (const auto& m : request.messages) {
    messages.push_back({{"role", std::string(to_string(m.role))}, {"content", m.content}});
  }
  json body = {{"model", request.model}, {"messages", messages}, {"temperature", request.temperature}};
  return body.dump();
}

ProviderResponse parse_response_body(std::string_view body) {
  json doc;
  try {
    doc = json::parse(body.begin(), body.end());
  } catch (const json::parse_error& e) {
    throw MalformedResponse(std::string("response is not JSON: ") + e.what());
  }
  const json* content = nullptr;
  if (doc.is_object() && doc.contains("choices") && doc["choices"].is_array() && !doc["choices"].empty()) {
    const json& choice = doc["choices"][0];
    if (choice.is_object() && choice.contains("message") && choice["message"].is_object() &&
        choice["message"].contains("content")) {
      content = &choice["message"]["content"];
    }
  }
  if (content == nullptr || !content->is_string()) {
    throw MalformedResponse("response has no choices[0].message.content string");
  }
  ProviderResponse out;
  out.content = content->get<std::string>();
  const json& choice = doc["choices"][0];
  if (choice.contains("finish_reason") && choice["finish_reason"].is_string()) {
    out.finish_reason = choice["finish_reason"].get<std::string>();
  }
  if (doc.contains("usage") && doc["usage"].is_object()) {
    const json& u = doc["usage"];
    Usage usage;
    usage.prompt_tokens = u.value("prompt_tokens", 0LL);
    usage.completion_tokens = u.value("completion_tokens", 0LL);
    usage.total_tokens = u.value("total_tokens", 0LL);
    out.usage = usage;
  }
  return out;
}

HttpProvider::HttpProvider(HttpProviderConfig config) : config_(std::move(config)) {
  if (config_.max_attempts < 1) {
    throw ConfigError("max_attempts must be at least 1");
  }
  auto [origin, prefix] = split_base_url(config_.base_url);
  host_ = std::move(origin);
  target_ = prefix + config_.path;
  if (!config_.sleep) {
    config_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
}

ProviderResponse HttpProvider::complete(const ProviderRequest& request) {
  const std::string body = build_request_body(request);
  httplib::Client client(host_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  const httplib::Headers headers{{"Authorization", "Bearer " + config_.api_key}};

  auto backoff = config_.initial_backoff;
  std::string last_error;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    ++attempts_;
    auto res = client.Post(target_, headers, body, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
    } else if (res->status == 401 || res->status == 403) {
      throw AuthError("endpoint rejected the credential (HTTP " + std::to_string(res->status) + ")");
    } else if (res->status >= 200 && res->status < 300) {
      return parse_response_body(res->body);
    } else if (retryable_status(res->status)) {
      last_error = "HTTP " + std::to_string(res->status);
    } else {
      throw ProviderError("HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
    }
    if (attempt < config_.max_attempts) {
      config_.sleep(backoff);
      backoff = std::chrono::milliseconds(
          static_cast<long long>(static_cast<double>(backoff.count()) * config_.backoff_multiplier));
    }
  }
  throw ProviderError("giving up after " + std::to_string(config_.max_attempts) + " attempts: " + last_error);
}

}  // namespace lumenloop::loop
