#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lumenloop/error.hpp"

namespace lumenloop::loop {

enum class Role { system, user, assistant };
std::string_view to_string(Role role);

struct ChatMessage {
  Role role = Role::user;
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

struct ProviderRequest {
  std::string model;
  std::vector<ChatMessage> messages;  // first message is the system problem statement
  double temperature = 0.0;
};

struct Usage {
  long long prompt_tokens = 0;
  long long completion_tokens = 0;
  long long total_tokens = 0;
};

struct ProviderResponse {
  std::string content;
  std::string finish_reason;
  std::optional<Usage> usage;
};

struct ProviderExchange {
  ProviderRequest request;
  ProviderResponse response;
};

// Unrecoverable provider failure (transport errors after retries, bad status).
class ProviderError : public Error {
 public:
  using Error::Error;
};

// 401/403 from the endpoint; never retried.
class AuthError : public ProviderError {
 public:
  using ProviderError::ProviderError;
};

// Response body without choices[0].message.content.
class MalformedResponse : public ProviderError {
 public:
  using ProviderError::ProviderError;
};

// Replay script has no response left for a request.
class ScriptExhausted : public ProviderError {
 public:
  using ProviderError::ProviderError;
};

// Source of controller programs. Calls are blocking.
class Provider {
 public:
  virtual ~Provider() = default;
  virtual ProviderResponse complete(const ProviderRequest& request) = 0;
};

}  // namespace lumenloop::loop
