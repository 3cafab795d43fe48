#pragma once

#include <fstream>
#include <functional>
#include <string>

#include "lumenloop/error.hpp"
#include "lumenloop/loop/records.hpp"

namespace lumenloop::loop {

class TranscriptWriteError : public Error {
 public:
  using Error::Error;
};

using Clock = std::function<std::string()>;

// Current UTC time, ISO-8601 with seconds.
std::string utc_timestamp();

// JSONL lines. The header carries the config snapshot and system prompt; each
// iteration gets one line as soon as it completes; a final status line closes
// the file.
std::string header_line(const LoopConfig& config, const std::string& system_prompt, const std::string& timestamp);
std::string record_line(const IterationRecord& record, const std::string& timestamp);
std::string status_line(TerminalStatus status, const std::string& failure, const std::string& timestamp);

// Appends and flushes one line per call.
class TranscriptWriter {
 public:
  // Truncates `path`. Throws TranscriptWriteError if it cannot be opened.
  explicit TranscriptWriter(const std::string& path, Clock clock = utc_timestamp);

  void header(const LoopConfig& config, const std::string& system_prompt);
  void record(const IterationRecord& record);
  void status(TerminalStatus status, const std::string& failure = {});

 private:
  void write(const std::string& line);

  std::string path_;
  std::ofstream out_;
  Clock clock_;
};

}  // namespace lumenloop::loop
