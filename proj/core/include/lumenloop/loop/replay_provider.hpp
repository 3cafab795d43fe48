#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lumenloop/loop/provider.hpp"

namespace lumenloop::loop {

// Serves scripted responses in order and records every request it receives.
class ReplayProvider final : public Provider {
 public:
  // Throws ConfigError for an empty script.
  explicit ReplayProvider(std::vector<std::string> script);

  ProviderResponse complete(const ProviderRequest& request) override;

  const std::vector<ProviderRequest>& received() const noexcept { return received_; }
  std::size_t remaining() const noexcept { return script_.size() - next_; }

 private:
  std::vector<std::string> script_;
  std::size_t next_ = 0;
  std::vector<ProviderRequest> received_;
};

// JSONL, one {"content": "..."} document per line; blank lines are skipped.
std::vector<std::string> parse_replay_script(std::string_view jsonl);
std::vector<std::string> load_replay_script(const std::string& path);

}  // namespace lumenloop::loop
