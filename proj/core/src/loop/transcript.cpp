#include "lumenloop/loop/transcript.hpp"

#include <chrono>
#include <ctime>

#include "json.hpp"

namespace lumenloop::loop {
namespace {

using json = nlohmann::ordered_json;

json config_json(const LoopConfig& c) {
  return {{"fitness_threshold", c.fitness_threshold},
          {"max_iterations", c.max_iterations},
          {"max_repair_attempts", c.max_repair_attempts},
          {"provider", c.provider},
          {"model", c.model},
          {"temperature", c.temperature},
          {"timeout_seconds", c.timeout_seconds},
          {"scenario", c.scenario},
          {"history", c.history}};
}

}  // namespace

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string header_line(const LoopConfig& config, const std::string& system_prompt, const std::string& timestamp) {
  json doc = {{"type", "header"},
              {"timestamp", timestamp},
              {"config", config_json(config)},
              {"system_prompt", system_prompt}};
  return doc.dump();
}

std::string record_line(const IterationRecord& r, const std::string& timestamp) {
  json doc = {{"type", "iteration"},
              {"timestamp", timestamp},
              {"index", r.index},
              {"prompt", r.prompt},
              {"raw_response", r.raw_response},
              {"rationale", r.rationale},
              {"program", r.program ? json(*r.program) : json(nullptr)},
              {"repair_attempts", r.repair_attempts},
              {"outcome", std::string(to_string(r.outcome))},
              {"diagnostics", r.diagnostics}};
  if (r.metrics) {
    doc["metrics"] = {{"energy_pct", r.metrics->energy_pct},
                      {"people_pct", r.metrics->people_pct},
                      {"trip_pct", r.metrics->trip_pct},
                      {"fitness", r.metrics->fitness}};
  } else {
    doc["metrics"] = nullptr;
  }
  return doc.dump();
}

std::string status_line(TerminalStatus status, const std::string& failure, const std::string& timestamp) {
  json doc = {{"type", "status"}, {"timestamp", timestamp}, {"status", std::string(to_string(status))}};
  if (!failure.empty()) {
    doc["failure"] = failure;
  }
  return doc.dump();
}

TranscriptWriter::TranscriptWriter(const std::string& path, Clock clock)
    : path_(path), out_(path, std::ios::trunc), clock_(std::move(clock)) {
  if (!out_) {
    throw TranscriptWriteError("cannot open transcript '" + path + "' for writing");
  }
}

void TranscriptWriter::header(const LoopConfig& config, const std::string& system_prompt) {
  write(header_line(config, system_prompt, clock_()));
}

void TranscriptWriter::record(const IterationRecord& record) { write(record_line(record, clock_())); }

void TranscriptWriter::status(TerminalStatus status, const std::string& failure) {
  write(status_line(status, failure, clock_()));
}

void TranscriptWriter::write(const std::string& line) {
  out_ << line << '\n';
  out_.flush();
  if (!out_) {
    throw TranscriptWriteError("failed writing transcript '" + path_ + "'");
  }
}

}  // namespace lumenloop::loop
