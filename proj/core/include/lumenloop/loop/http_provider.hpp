#pragma once

#include <chrono>
#include <functional>
#include <string>

#include "lumenloop/loop/provider.hpp"

namespace lumenloop::loop {

inline constexpr const char* kApiKeyEnv = "LUMENLOOP_API_KEY";
inline constexpr const char* kApiBaseEnv = "LUMENLOOP_API_BASE";
inline constexpr const char* kDefaultApiBase = "https://api.openai.com/v1";

struct HttpProviderConfig {
  std::string base_url = kDefaultApiBase;  // scheme://host[:port][/prefix]
  std::string path = "/chat/completions";
  std::string api_key;
  std::chrono::milliseconds timeout{60'000};
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{1'000};
  double backoff_multiplier = 2.0;
  // Injected for tests; defaults to std::this_thread::sleep_for.
  std::function<void(std::chrono::milliseconds)> sleep;
};

// Reads the credential and base URL from the environment. Throws ConfigError
// when the credential is missing.
HttpProviderConfig http_config_from_env();

// {"model", "messages": [{"role", "content"}], "temperature"}
std::string build_request_body(const ProviderRequest& request);

// Throws MalformedResponse unless choices[0].message.content is a string.
ProviderResponse parse_response_body(std::string_view body);

// Chat-completion client. Timeouts, connection failures, 429 and 5xx are
// retried with exponential backoff up to max_attempts; 401/403 raise
// AuthError at once; any other status raises ProviderError.
class HttpProvider final : public Provider {
 public:
  explicit HttpProvider(HttpProviderConfig config);
  ProviderResponse complete(const ProviderRequest& request) override;

  int attempts_made() const noexcept { return attempts_; }

 private:
  HttpProviderConfig config_;
  std::string host_;    // scheme://host[:port]
  std::string target_;  // prefix + path
  int attempts_ = 0;
};

}  // namespace lumenloop::loop
