#include "lumenloop/loop/replay_provider.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lumenloop::loop {

ReplayProvider::ReplayProvider(std::vector<std::string> script) : script_(std::move(script)) {
  if (script_.empty()) {
    throw ConfigError("replay script is empty");
  }
}

ProviderResponse ReplayProvider::complete(const ProviderRequest& request) {
  received_.push_back(request);
  if (next_ >= script_.size()) {
    throw ScriptExhausted("replay script exhausted after " + std::to_string(script_.size()) + " responses");
  }
  return ProviderResponse{script_[next_++], "stop", std::nullopt};
}

std::vector<std::string> parse_replay_script(std::string_view jsonl) {
  std::vector<std::string> out;
  std::istringstream in{std::string(jsonl)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    try {
      const auto doc = nlohmann::json::parse(line);
      out.push_back(doc.at("content").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("replay script line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<std::string> load_replay_script(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open replay script '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_replay_script(buf.str());
}

}  // namespace lumenloop::loop
